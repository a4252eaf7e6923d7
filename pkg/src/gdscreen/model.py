"""Designs, effects and centered/normalized model matrices.

A design is an n x m array of +/-1 factor settings.  Model terms (effects)
are either main effects or two-factor interactions; for m factors there are
m + m*(m-1)/2 of them.  Model matrices are built from the raw +/-1 columns
(interactions as element-wise products), then each column is centered to
mean zero and rescaled to Euclidean length sqrt(n-1), and the response is
centered.  Columns that are constant before centering are zeroed and
reported as degenerate instead of raising.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError

CENTER_TOL = 1e-10


def default_factor_names(m: int) -> list[str]:
    """Letters A..Z for the first 26 factors, then F27, F28, ..."""
    names = list(string.ascii_uppercase[: min(m, 26)])
    names += [f"F{k + 1}" for k in range(26, m)]
    return names


@dataclass(frozen=True)
class Design:
    """An n-run, m-factor two-level experiment plan (entries exactly +/-1)."""

    settings: np.ndarray
    factor_names: tuple[str, ...] = ()

    def __post_init__(self):
        settings = np.asarray(self.settings, dtype=float)
        if settings.ndim != 2:
            raise ValidationError("design settings must be a 2-D array")
        n, m = settings.shape
        if n < 2 or m < 2:
            raise ValidationError(f"design needs n >= 2 runs and m >= 2 factors, got {n}x{m}")
        if not np.all(np.isin(settings, (-1.0, 1.0))):
            bad = np.argwhere(~np.isin(settings, (-1.0, 1.0)))[0]
            raise ValidationError(
                f"design entry at run {bad[0] + 1}, factor {bad[1] + 1} is not -1 or +1"
            )
        names = tuple(self.factor_names) or tuple(default_factor_names(m))
        if len(names) != m:
            raise ValidationError(f"expected {m} factor names, got {len(names)}")
        if len(set(names)) != m:
            raise ValidationError("factor names must be unique")
        object.__setattr__(self, "settings", settings)
        object.__setattr__(self, "factor_names", names)

    @property
    def runs(self) -> int:
        return self.settings.shape[0]

    @property
    def factors(self) -> int:
        return self.settings.shape[1]


@dataclass(frozen=True, order=True)
class Effect:
    """A main effect (j < 0 sentinel unused; j == -1 means main) or a 2fi.

    Stored as (i, j) with j == -1 for the main effect of factor i, and
    0 <= i < j for the interaction of factors i and j.  The derived ordering
    sorts all mains (by factor index) before all interactions (lexicographic),
    which is the tie-breaking order used throughout.
    """

    kind: int  # 0 = main, 1 = interaction; leading field so mains sort first
    i: int
    j: int = -1

    def __post_init__(self):
        if self.kind == 0:
            if self.i < 0 or self.j != -1:
                raise ValidationError(f"bad main effect ({self.i}, {self.j})")
        elif self.kind == 1:
            if not 0 <= self.i < self.j:
                raise ValidationError(
                    f"interaction indices must satisfy 0 <= i < j, got ({self.i}, {self.j})"
                )
        else:
            raise ValidationError(f"unknown effect kind {self.kind}")

    @staticmethod
    def main(i: int) -> "Effect":
        return Effect(0, i)

    @staticmethod
    def interaction(i: int, j: int) -> "Effect":
        if i > j:
            i, j = j, i
        return Effect(1, i, j)

    @property
    def is_main(self) -> bool:
        return self.kind == 0

    @property
    def factor_indices(self) -> tuple[int, ...]:
        return (self.i,) if self.is_main else (self.i, self.j)

    def validate_for(self, m: int) -> None:
        if max(self.factor_indices) >= m:
            raise ValidationError(f"effect {self} references a factor beyond m={m}")


def main_effects(m: int) -> list[Effect]:
    return [Effect.main(i) for i in range(m)]


def all_interactions(m: int) -> list[Effect]:
    return [Effect.interaction(i, j) for i in range(m) for j in range(i + 1, m)]


def full_effects(m: int) -> list[Effect]:
    """All m + m*(m-1)/2 candidate terms, mains first."""
    return main_effects(m) + all_interactions(m)


def effect_label(effect: Effect, names) -> str:
    """Paper-style label: factor name for a main, concatenation for a 2fi."""
    names = list(names)
    if effect.is_main:
        return names[effect.i]
    return names[effect.i] + names[effect.j]


def parse_effect_label(label: str, names) -> Effect:
    """Inverse of effect_label; also accepts 'A*B', 'A:B' and 'A.B' forms."""
    names = list(names)
    token = label.strip()
    if not token:
        raise ValidationError("empty effect label")
    for sep in ("*", ":", "."):
        if sep in token:
            left, _, right = token.partition(sep)
            return _interaction_from_names(left.strip(), right.strip(), names, token)
    if token in names:
        return Effect.main(names.index(token))
    # concatenated pair, e.g. "FG"; try every split point
    for cut in range(1, len(token)):
        left, right = token[:cut], token[cut:]
        if left in names and right in names:
            return _interaction_from_names(left, right, names, token)
    raise ValidationError(f"cannot parse effect label {token!r} with factors {names}")


def _interaction_from_names(a: str, b: str, names: list[str], token: str) -> Effect:
    if a not in names or b not in names:
        raise ValidationError(f"cannot parse effect label {token!r} with factors {names}")
    i, j = names.index(a), names.index(b)
    if i == j:
        raise ValidationError(f"self-interaction {token!r} is not a valid effect")
    return Effect.interaction(i, j)


def interaction_column(design: Design, i: int, j: int) -> np.ndarray:
    """Element-wise product of raw +/-1 columns i and j (requires i < j)."""
    m = design.factors
    if not 0 <= i < j < m:
        raise ValidationError(f"interaction indices ({i}, {j}) invalid for m={m}")
    return design.settings[:, i] * design.settings[:, j]


def raw_column(design: Design, effect: Effect) -> np.ndarray:
    effect.validate_for(design.factors)
    if effect.is_main:
        return design.settings[:, effect.i].copy()
    return interaction_column(design, effect.i, effect.j)


@dataclass(frozen=True)
class ModelMatrix:
    """Centered/normalized model matrix with its centered response.

    Columns are scaled to Euclidean length sqrt(n-1); columns constant before
    centering are all-zero and listed in ``degenerate``.
    """

    columns: np.ndarray
    effects: tuple[Effect, ...]
    y: np.ndarray
    factor_names: tuple[str, ...]
    degenerate: tuple[int, ...] = ()
    column_norm: float = field(default=0.0)

    def __post_init__(self):
        object.__setattr__(self, "column_norm", float(np.sqrt(self.n - 1)))
        object.__setattr__(self, "_index", {e: k for k, e in enumerate(self.effects)})

    @property
    def n(self) -> int:
        return self.columns.shape[0]

    @property
    def p(self) -> int:
        return self.columns.shape[1]

    def index_of(self, effect: Effect) -> int:
        try:
            return self._index[effect]
        except KeyError:
            raise ValidationError(f"effect {effect} is not in this model matrix") from None

    def submatrix(self, effects) -> np.ndarray:
        idx = [self.index_of(e) for e in effects]
        return self.columns[:, idx]

    def labels(self, effects=None) -> list[str]:
        effects = self.effects if effects is None else effects
        return [effect_label(e, self.factor_names) for e in effects]

    def drop_degenerate(self) -> "ModelMatrix":
        """Restrict to non-degenerate columns (no-op when none are)."""
        if not self.degenerate:
            return self
        keep = [k for k in range(self.p) if k not in set(self.degenerate)]
        return ModelMatrix(
            columns=self.columns[:, keep],
            effects=tuple(self.effects[k] for k in keep),
            y=self.y,
            factor_names=self.factor_names,
            degenerate=(),
        )


def build_model_matrix(design: Design, effects, response) -> ModelMatrix:
    """Assemble raw columns for ``effects``, center and normalize, center y.

    Raw interaction columns are products of the +/-1 settings, formed before
    any centering.  Duplicate effects and response-length mismatches raise;
    constant raw columns are zeroed and reported via ``degenerate``.
    """
    effects = tuple(effects)
    if not effects:
        raise ValidationError("effect list must be non-empty")
    if len(set(effects)) != len(effects):
        seen = set()
        dup = next(e for e in effects if (e in seen) or seen.add(e))
        raise ValidationError(f"duplicate effect {dup}")
    y = np.asarray(response, dtype=float).ravel()
    n = design.runs
    if y.shape[0] != n:
        raise ValidationError(f"response length {y.shape[0]} does not match n={n}")
    if not np.all(np.isfinite(y)):
        raise ValidationError("response contains non-finite values")

    raw = np.empty((n, len(effects)))
    for k, effect in enumerate(effects):
        raw[:, k] = raw_column(design, effect)

    centered = raw - raw.mean(axis=0)
    norms = np.linalg.norm(centered, axis=0)
    target = np.sqrt(n - 1.0)
    degenerate = tuple(int(k) for k in np.flatnonzero(norms <= CENTER_TOL * n))
    scale = np.where(norms <= CENTER_TOL * n, 1.0, norms / target)
    columns = centered / scale
    columns[:, list(degenerate)] = 0.0

    return ModelMatrix(
        columns=columns,
        effects=effects,
        y=y - y.mean(),
        factor_names=design.factor_names,
        degenerate=degenerate,
    )
