"""Rediscovering the vacuum Maxwell equations from synthetic field data.

Each alphabet letter is bound to a vector-calculus operator applied to the
electric field ``E`` or the magnetic field ``B``. A candidate theory is a set
of such terms; it is accepted when some linear combination using every term
vanishes on sampled plane-wave data. The combination's coefficients are the
recovered constants. Units are natural (``c = 1``).
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from .alphabet import Theory, WeightedAlphabet, canonical, render_theory
from .enumerator import march
from .validation import ValidationOutcome, ValidationRecord, prune_supersets

__all__ = [
    "DiscoveryConfig",
    "DiscoveryReport",
    "FieldScene",
    "MAXWELL_TARGET",
    "OperatorTerm",
    "PlaneWave",
    "SHAPE_INCOMPATIBLE",
    "STANDARD_TERMS",
    "SampleSet",
    "TermColumns",
    "Tolerances",
    "build_term_matrix",
    "check_maxwell",
    "discover",
    "eval_term",
    "gen_samples",
    "gen_scene",
    "maxwell_validator",
    "standard_alphabet",
]

OPERATORS = ("identity", "divergence", "curl", "laplacian", "dt", "dtt")
FIELDS = ("E", "B")

# Partial derivatives taken by each operator. Divergence takes three first
# partials, curl six, the Laplacian three second partials (six). A time
# derivative is charged like the spatial operator of the same order.
DERIVATIVE_COUNT = {
    "identity": 0,
    "divergence": 3,
    "dt": 3,
    "curl": 6,
    "laplacian": 6,
    "dtt": 6,
}

_LABELS = {
    "identity": "{f}",
    "divergence": "div {f}",
    "curl": "curl {f}",
    "laplacian": "lap {f}",
    "dt": "d{f}/dt",
    "dtt": "d2{f}/dt2",
}


@dataclass(frozen=True)
class OperatorTerm:
    letter: str
    operator: str
    field: str

    def __post_init__(self):
        if self.operator not in OPERATORS:
            raise ValueError(f"unknown operator {self.operator!r}")
        if self.field not in FIELDS:
            raise ValueError(f"unknown field {self.field!r}")

    @property
    def shape(self) -> str:
        return "scalar" if self.operator == "divergence" else "vector3"

    @property
    def weight(self) -> int:
        return 1 + DERIVATIVE_COUNT[self.operator]

    @property
    def label(self) -> str:
        return _LABELS[self.operator].format(f=self.field)


def _standard_terms() -> dict[str, OperatorTerm]:
    layout = [
        ("A", "identity", "E"), ("B", "identity", "B"),
        ("C", "divergence", "E"), ("D", "divergence", "B"),
        ("E", "dt", "E"), ("F", "dt", "B"),
        ("G", "curl", "E"), ("H", "curl", "B"),
        ("I", "laplacian", "E"), ("J", "laplacian", "B"),
        ("K", "dtt", "E"), ("L", "dtt", "B"),
    ]
    return {letter: OperatorTerm(letter, op, f) for letter, op, f in layout}


STANDARD_TERMS: Mapping[str, OperatorTerm] = _standard_terms()


def alphabet_for(terms: Mapping[str, OperatorTerm]) -> WeightedAlphabet:
    return WeightedAlphabet(tuple((letter, t.weight) for letter, t in terms.items()))


def standard_alphabet() -> WeightedAlphabet:
    """Letters A..L weighted by their operator cost (bindings in ``STANDARD_TERMS``)."""
    return alphabet_for(STANDARD_TERMS)


# Discoveries expected from vacuum data: both divergence laws, Faraday and
# Ampere (c = 1), and the two wave equations.
MAXWELL_TARGET = frozenset({
    (4, ("C",)), (4, ("D",)),
    (11, ("E", "H")), (11, ("F", "G")),
    (14, ("I", "K")), (14, ("J", "L")),
})

# theory -> (numerator letter, denominator letter, expected coefficient ratio)
MAXWELL_RATIOS = {
    ("F", "G"): ("F", "G", 1.0),
    ("E", "H"): ("E", "H", -1.0),
    ("I", "K"): ("K", "I", -1.0),
    ("J", "L"): ("L", "J", -1.0),
}


# ---------------------------------------------------------------------------
# Scenes and samples


@dataclass(frozen=True)
class PlaneWave:
    k: np.ndarray
    polarization: np.ndarray
    amplitude: float
    phase: float

    @property
    def wavenumber(self) -> float:
        return float(np.linalg.norm(self.k))

    def b_direction(self) -> np.ndarray:
        return np.cross(self.k / self.wavenumber, self.polarization)


@dataclass(frozen=True)
class FieldScene:
    """Superposition of transverse plane waves travelling at speed ``c``.

    ``E = sum a e cos(k.x - w t + phi)`` and
    ``B = sum (a/c) (khat x e) cos(k.x - w t + phi)`` with ``w = c |k|``.
    """

    waves: tuple[PlaneWave, ...]
    c: float = 1.0

    def omega(self, wave: PlaneWave) -> float:
        return self.c * wave.wavenumber

    def scaled(self, factor: float) -> "FieldScene":
        return replace(
            self, waves=tuple(replace(w, amplitude=w.amplitude * factor) for w in self.waves)
        )

    def phases(self, wave: PlaneWave, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        return x @ wave.k - self.omega(wave) * t + wave.phase

    def field(self, name: str, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        """Field values, shape ``(P, 3)``, at points ``x`` ``(P, 3)`` and times ``t`` ``(P,)``."""
        out = np.zeros((len(t), 3))
        for w in self.waves:
            amp, direction = self._amp_dir(w, name)
            out += amp * np.cos(self.phases(w, x, t))[:, None] * direction
        return out

    def _amp_dir(self, w: PlaneWave, name: str):
        if name == "E":
            return w.amplitude, w.polarization
        if name == "B":
            return w.amplitude / self.c, w.b_direction()
        raise ValueError(f"unknown field {name!r}")


@dataclass(frozen=True)
class SampleSet:
    x: np.ndarray
    t: np.ndarray

    def __len__(self) -> int:
        return len(self.t)


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _wavenumbers(rng, count: int, monochromatic: bool) -> np.ndarray:
    if monochromatic:
        return np.ones(count)
    # successive ratios >= 1.12 keep neighbours >= 10% apart
    ratios = rng.uniform(1.12, 1.35, size=count - 1)
    return rng.uniform(0.6, 0.8) * np.concatenate(([1.0], np.cumprod(ratios)))


def gen_scene(wave_count: int = 3, seed: int = 0, *, monochromatic: bool = False) -> FieldScene:
    """Random transverse plane waves with pairwise-distinct frequencies.

    Wavenumbers differ by at least 10% of the larger one, unless
    *monochromatic* is set, in which case every wave has ``|k| = 1``.
    """
    if wave_count < 3:
        raise ValueError(f"wave_count must be >= 3, got {wave_count}")
    rng = np.random.default_rng([seed, 0])
    ks = _wavenumbers(rng, wave_count, monochromatic)
    waves = []
    for mag in ks:
        khat = _unit(rng.standard_normal(3))
        e = rng.standard_normal(3)
        for _ in range(2):
            e = e - (e @ khat) * khat
        waves.append(
            PlaneWave(
                k=mag * khat,
                polarization=_unit(e),
                amplitude=float(rng.uniform(0.5, 1.5)),
                phase=float(rng.uniform(0.0, 2 * np.pi)),
            )
        )
    return FieldScene(tuple(waves))


def gen_samples(count: int = 64, seed: int = 0) -> SampleSet:
    """Points uniform in ``[0, 2pi)^3 x [0, 2pi)``."""
    rng = np.random.default_rng([seed, 1])
    return SampleSet(
        x=rng.uniform(0.0, 2 * np.pi, size=(count, 3)),
        t=rng.uniform(0.0, 2 * np.pi, size=count),
    )


# ---------------------------------------------------------------------------
# Term evaluation


def _analytic(term: OperatorTerm, scene: FieldScene, x, t) -> np.ndarray:
    vector = term.shape == "vector3"
    out = np.zeros((len(t), 3)) if vector else np.zeros(len(t))
    for w in scene.waves:
        amp, v = scene._amp_dir(w, term.field)
        theta = scene.phases(w, x, t)
        cos, sin = np.cos(theta)[:, None], np.sin(theta)[:, None]
        k, omega = w.k, scene.omega(w)
        op = term.operator
        if op == "identity":
            out += amp * cos * v
        elif op == "divergence":
            out += -amp * (k @ v) * sin[:, 0]
        elif op == "curl":
            out += -amp * sin * np.cross(k, v)
        elif op == "laplacian":
            out += -amp * (k @ k) * cos * v
        elif op == "dt":
            out += amp * omega * sin * v
        elif op == "dtt":
            out += -amp * omega**2 * cos * v
    return out


def _finite_difference(term: OperatorTerm, scene: FieldScene, x, t, h: float) -> np.ndarray:
    def f(xx, tt):
        return scene.field(term.field, xx, tt)

    op = term.operator
    if op == "identity":
        return f(x, t)
    if op == "dt":
        return (f(x, t + h) - f(x, t - h)) / (2 * h)
    if op == "dtt":
        return (f(x, t + h) - 2 * f(x, t) + f(x, t - h)) / h**2
    eye = np.eye(3) * h
    if op == "laplacian":
        centre = f(x, t)
        return sum((f(x + eye[i], t) - 2 * centre + f(x - eye[i], t)) for i in range(3)) / h**2
    # jac[:, j, i] = d F_j / d x_i
    jac = np.stack([(f(x + eye[i], t) - f(x - eye[i], t)) / (2 * h) for i in range(3)], axis=2)
    if op == "divergence":
        return jac[:, 0, 0] + jac[:, 1, 1] + jac[:, 2, 2]
    return np.stack(
        [
            jac[:, 2, 1] - jac[:, 1, 2],
            jac[:, 0, 2] - jac[:, 2, 0],
            jac[:, 1, 0] - jac[:, 0, 1],
        ],
        axis=1,
    )


def eval_term(
    term: OperatorTerm,
    scene: FieldScene,
    x,
    t,
    mode: str = "analytic",
    h: float = 1e-3,
) -> np.ndarray:
    """Evaluate *term* at one point (``x`` shape ``(3,)``) or many (``(P, 3)``).

    ``mode="analytic"`` differentiates the plane waves in closed form;
    ``mode="fd"`` applies second-order central differences with step *h*.
    """
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    single = x.ndim == 1
    x2, t2 = np.atleast_2d(x), np.atleast_1d(t)
    if mode == "analytic":
        out = _analytic(term, scene, x2, t2)
    elif mode in ("fd", "finite_difference"):
        out = _finite_difference(term, scene, x2, t2, h)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return out[0] if single else out


# ---------------------------------------------------------------------------
# Term matrices and the validator


class _ShapeIncompatible:
    def __repr__(self):
        return "SHAPE_INCOMPATIBLE"

    def __bool__(self):
        return False


SHAPE_INCOMPATIBLE = _ShapeIncompatible()


class TermColumns:
    """Per-letter term columns over one scene and sample set, computed once.

    Vector terms are flattened sample-major (x, y, z of sample 0, then
    sample 1, ...).
    """

    def __init__(
        self,
        scene: FieldScene,
        samples: SampleSet,
        mode: str = "analytic",
        h: float = 1e-3,
        terms: Mapping[str, OperatorTerm] = STANDARD_TERMS,
    ):
        self.terms = dict(terms)
        self.samples = samples
        self.columns: dict[str, np.ndarray] = {}
        for letter, term in self.terms.items():
            col = eval_term(term, scene, samples.x, samples.t, mode, h).reshape(-1)
            if not np.all(np.isfinite(col)):
                raise ValueError(f"non-finite value in term {letter} ({term.label}); check h and the scene")
            self.columns[letter] = col
        self.norms = {k: float(np.linalg.norm(v)) for k, v in self.columns.items()}
        # scale for deciding that a column is identically zero
        self.reference_norm = max(self.norms.values())

    def matrix(self, theory: Iterable[str]):
        members = canonical(theory)
        unknown = [m for m in members if m not in self.terms]
        if unknown:
            raise KeyError(f"no operator bound to {unknown}")
        if len({self.terms[m].shape for m in members}) > 1:
            return SHAPE_INCOMPATIBLE
        if len(self.samples) < 4 * len(members):
            raise ValueError(
                f"{len(self.samples)} samples cannot overdetermine a {len(members)}-term theory"
            )
        if not members:
            return np.zeros((0, 0))
        return np.column_stack([self.columns[m] for m in members])


def build_term_matrix(
    theory: Iterable[str],
    scene: FieldScene,
    samples: SampleSet,
    mode: str = "analytic",
    *,
    h: float = 1e-3,
    terms: Mapping[str, OperatorTerm] = STANDARD_TERMS,
):
    """Matrix with one column per member (canonical order), or ``SHAPE_INCOMPATIBLE``."""
    members = canonical(theory)
    bound = {m: terms[m] for m in members if m in terms}
    return TermColumns(scene, samples, mode, h, bound).matrix(members)


@dataclass(frozen=True)
class Tolerances:
    tol_rank: float
    tol_support: float
    tol_zero: float
    tol_coef: float

    @classmethod
    def for_mode(cls, mode: str) -> "Tolerances":
        if mode == "analytic":
            return cls(tol_rank=1e-8, tol_support=1e-3, tol_zero=1e-8, tol_coef=1e-6)
        if mode in ("fd", "finite_difference"):
            return cls(tol_rank=1e-4, tol_support=1e-3, tol_zero=1e-5, tol_coef=1e-3)
        raise ValueError(f"unknown mode {mode!r}")


class MaxwellValidator:
    """Accept theories whose terms admit a full-support vanishing combination."""

    def __init__(self, columns: TermColumns, tolerances: Tolerances, seed: int = 0):
        self.columns = columns
        self.tol = tolerances
        self.seed = seed

    def __call__(self, theory: Theory) -> ValidationOutcome:
        members = canonical(theory)
        m = self.columns.matrix(members)
        if m is SHAPE_INCOMPATIBLE:
            return ValidationOutcome(False, diagnostics="shape-incompatible")
        if not members:
            return ValidationOutcome(False, diagnostics="empty theory")

        norms = np.array([self.columns.norms[s] for s in members])
        zero = norms < self.tol.tol_zero * self.columns.reference_norm
        if zero.any():
            if len(members) == 1:
                return ValidationOutcome(True, (1.0,), "identically zero term")
            return ValidationOutcome(False, diagnostics="contains an identically zero term")

        try:
            _, s, vt = np.linalg.svd(m / norms, full_matrices=False)
        except np.linalg.LinAlgError as exc:
            raise ValueError(f"SVD failed for {render_theory(members)}; resample") from exc
        ratios = s / s[0]
        nullity = int(np.sum(ratios < self.tol.tol_rank))
        if nullity == 0:
            return ValidationOutcome(False, diagnostics=f"sigma_min/sigma_max={ratios[-1]:.3g}")

        basis = vt[-nullity:].T
        if nullity == 1:
            v = basis[:, 0]
        else:
            rng = np.random.default_rng([self.seed, zlib.crc32(",".join(members).encode())])
            v = basis @ rng.standard_normal(nullity)
        mags = np.abs(v)
        if mags.min() < self.tol.tol_support * mags.max():
            return ValidationOutcome(False, diagnostics="null vector lacks full support")

        coef = v / norms
        big = np.abs(coef)
        # first entry within rounding of the maximum, so near-ties resolve by member order
        pivot = int(np.argmax(big >= big.max() * (1 - 1e-9)))
        coef = np.clip(coef / coef[pivot], -1.0, 1.0)
        return ValidationOutcome(
            True, tuple(float(c) for c in coef), f"nullity={nullity} sigma_ratio={ratios[-1]:.3g}"
        )


def maxwell_validator(
    scene: FieldScene,
    samples: SampleSet,
    mode: str = "analytic",
    tolerances: Tolerances | None = None,
    *,
    h: float = 1e-3,
    terms: Mapping[str, OperatorTerm] = STANDARD_TERMS,
    seed: int = 0,
) -> MaxwellValidator:
    if tolerances is None:
        tolerances = Tolerances.for_mode(mode)
    return MaxwellValidator(TermColumns(scene, samples, mode, h, terms), tolerances, seed)


def fd_max_error(term: OperatorTerm, scene: FieldScene, samples: SampleSet, h: float) -> float:
    """Largest absolute finite-difference error of *term* over *samples*."""
    exact = eval_term(term, scene, samples.x, samples.t, "analytic")
    approx = eval_term(term, scene, samples.x, samples.t, "fd", h)
    return float(np.max(np.abs(approx - exact)))


# ---------------------------------------------------------------------------
# Discovery


@dataclass(frozen=True)
class DiscoveryConfig:
    max_comp: int = 14
    seed: int = 0
    wave_count: int = 3
    sample_count: int = 64
    mode: str = "analytic"
    h: float = 1e-3
    tolerances: Tolerances | None = None
    prune: bool = True
    monochromatic: bool = False
    workers: int = 1
    terms: Mapping[str, OperatorTerm] = field(default_factory=lambda: STANDARD_TERMS)

    def resolved_tolerances(self) -> Tolerances:
        return self.tolerances or Tolerances.for_mode(self.mode)


def render_equation(members: Sequence[str], coefficients: Sequence[float], terms) -> str:
    parts = []
    for sym, c in zip(members, coefficients):
        label = terms[sym].label if sym in terms else sym
        mag = abs(c)
        body = label if abs(mag - 1) < 1e-6 else f"{mag:.6g}*{label}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) + " = 0"


@dataclass
class DiscoveryReport:
    records: list[ValidationRecord]
    config: DiscoveryConfig
    enumerated: int = 0

    def keys(self) -> set[tuple[int, tuple[str, ...]]]:
        return {r.key for r in self.records}

    def coefficients(self, theory: Iterable[str]) -> dict[str, float]:
        members = canonical(theory)
        for r in self.records:
            if canonical(r.theory) == members:
                return dict(zip(members, r.outcome.coefficients))
        raise KeyError(f"{render_theory(members)} not in report")

    def ratio(self, theory: Iterable[str], num: str, den: str) -> float:
        c = self.coefficients(theory)
        return c[num] / c[den]

    def lines(self) -> list[str]:
        out = []
        for r in self.records:
            members = canonical(r.theory)
            coeffs = r.outcome.coefficients or ()
            eq = render_equation(members, coeffs, self.config.terms) if coeffs else ""
            out.append(
                f'q={r.q} theory={render_theory(members)} eq="{eq}" '
                f"coeffs=[{','.join(f'{c:.9g}' for c in coeffs)}]"
            )
        return out

    def table(self) -> str:
        rows = [("q", "theory", "equation", "coefficients")]
        for r in self.records:
            members = canonical(r.theory)
            coeffs = r.outcome.coefficients or ()
            rows.append((
                str(r.q),
                render_theory(members),
                render_equation(members, coeffs, self.config.terms) if coeffs else "",
                " ".join(f"{c:+.6f}" for c in coeffs),
            ))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        return "\n".join(
            "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows
        )


def discover(config: DiscoveryConfig | None = None) -> DiscoveryReport:
    """Enumerate operator theories and keep the minimal ones that hold on the data."""
    config = config or DiscoveryConfig()
    scene = gen_scene(config.wave_count, config.seed, monochromatic=config.monochromatic)
    samples = gen_samples(config.sample_count, config.seed)
    validator = maxwell_validator(
        scene,
        samples,
        config.mode,
        config.resolved_tolerances(),
        h=config.h,
        terms=config.terms,
        seed=config.seed,
    )
    result = march(alphabet_for(config.terms), config.max_comp, validator, workers=config.workers)
    records = prune_supersets(result.records) if config.prune else result.records
    return DiscoveryReport(records, config, enumerated=result.levels.total)


def check_maxwell(report: DiscoveryReport, tol_coef: float | None = None) -> list[str]:
    """Problems found when comparing *report* with the six vacuum laws; empty means match."""
    if tol_coef is None:
        tol_coef = report.config.resolved_tolerances().tol_coef
    problems = []
    found = report.keys()
    for q, members in sorted(MAXWELL_TARGET - found):
        problems.append(f"missing {render_theory(members)}@{q}")
    for q, members in sorted(found - MAXWELL_TARGET):
        problems.append(f"unexpected {render_theory(members)}@{q}")
    found_members = {members for _, members in found}
    for members, (num, den, expected) in MAXWELL_RATIOS.items():
        if members not in found_members:
            continue
        got = report.ratio(members, num, den)
        if abs(got - expected) > tol_coef:
            problems.append(
                f"{render_theory(members)}: c_{num}/c_{den}={got:.9g}, expected {expected:+g}"
            )
    return problems
