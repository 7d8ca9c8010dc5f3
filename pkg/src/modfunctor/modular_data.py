"""Numeric modular-category data and the scalar invariants derived from it.

The central object is :class:`ModularData`: a finite label set with a
distinguished unit label, a duality involution, a complex S-matrix and a
twist for every label.  Everything else in the package (fusion rules,
state-space dimensions, character groups, scaling solvers) is computed
from these four pieces of data.

Construction performs *structural* checks only (shapes, bijectivity,
label consistency) and raises :class:`InvalidModularData` on failure.
Numeric axioms — symmetry and invertibility of S, involutivity of the
dual map, twist/dimension duality symmetry — are checked separately by
:func:`validate_modular_data`, which returns a report instead of raising,
so callers can inspect partially broken data.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_TOL",
    "InvalidModularData",
    "ValidationFailure",
    "NonIntegralFusion",
    "ScaleLimit",
    "ModularData",
    "FusionTensor",
    "ValidationReport",
    "validate_modular_data",
    "quantum_dim",
    "quantum_dims",
    "global_D",
    "gauss_sum_delta",
    "anomaly_scalar",
    "verlinde_fusion",
    "fs_indicator",
]

DEFAULT_TOL = 1e-9


class InvalidModularData(ValueError):
    """Structurally malformed input: wrong shapes, unknown labels, non-bijective dual."""


class ValidationFailure(ValueError):
    """Numeric axiom violations; carries the :class:`ValidationReport`."""

    def __init__(self, report):
        self.report = report
        super().__init__("modular data failed validation: " + ", ".join(report.violations))


class NonIntegralFusion(ValueError):
    """A Verlinde fusion coefficient is not a nonnegative integer within tolerance."""


class ScaleLimit(ValueError):
    """Requested construction exceeds the documented size limits."""


class ModularData:
    """Label set with unit, duality involution, S-matrix and twists.

    Parameters
    ----------
    labels : iterable of str
        Distinct label names.  Order is significant: it fixes the row and
        column order of `S` and the canonical ordering used everywhere else.
    zero : str
        The unit label.
    dual : mapping str -> str
        The duality map.  Must be a bijection of the label set; involutivity
        is a validation check, not a construction requirement.
    S : (n, n) array-like of complex
        The S-matrix, indexed by label order.
    theta : mapping str -> complex
        Twist of every label.
    tol : float
        Comparison tolerance used by all derived numeric checks.

    Instances are treated as immutable; the S-matrix is stored read-only.
    All operations on the data are pure functions, so values may be shared
    freely across threads.
    """

    __slots__ = ("labels", "zero", "dual", "S", "theta", "tol", "_index")

    def __init__(self, labels, zero, dual, S, theta, tol=DEFAULT_TOL):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise InvalidModularData("labels must be distinct")
        if not labels:
            raise InvalidModularData("label set is empty")
        index = {x: i for i, x in enumerate(labels)}
        if zero not in index:
            raise InvalidModularData(f"unit label {zero!r} not in label set")
        dual = {str(a): str(b) for a, b in dict(dual).items()}
        if set(dual) != set(labels):
            raise InvalidModularData("dual map must be defined on exactly the label set")
        if set(dual.values()) != set(labels):
            raise InvalidModularData("dual map must be a bijection of the label set")
        S = np.asarray(S, dtype=complex)
        n = len(labels)
        if S.shape != (n, n):
            raise InvalidModularData(f"S must be {n}x{n}, got {S.shape}")
        theta = {str(a): complex(v) for a, v in dict(theta).items()}
        if set(theta) != set(labels):
            raise InvalidModularData("theta must be defined on exactly the label set")
        if not (tol > 0):
            raise InvalidModularData("tol must be positive")
        S = S.copy()
        S.setflags(write=False)
        self.labels = labels
        self.zero = zero
        self.dual = dual
        self.S = S
        self.theta = theta
        self.tol = float(tol)
        self._index = index

    @property
    def n(self):
        return len(self.labels)

    def index(self, label):
        """Position of `label` in the canonical order (KeyError if unknown)."""
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown label {label!r}") from None

    def dual_index(self, i):
        """Index-level duality: position of dual(labels[i])."""
        return self._index[self.dual[self.labels[i]]]

    def __repr__(self):
        return f"ModularData(n={self.n}, zero={self.zero!r})"


@dataclass(frozen=True, eq=False)
class FusionTensor:
    """Integer fusion multiplicities N[i, j, k] = N_{ij}^k in label order.

    Compared (and hashed) by identity: the tensor is derived data, so two
    instances built from the same category are interchangeable anyway.
    """

    labels: tuple
    N: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if self.N.shape != (n, n, n):
            raise InvalidModularData("fusion tensor shape does not match label count")

    def coeff(self, data, i, j, k):
        """N_{ij}^k by label name."""
        return int(self.N[data.index(i), data.index(j), data.index(k)])


@dataclass
class ValidationReport:
    """Outcome of the numeric axiom checks; empty `violations` means pass."""

    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def add(self, name, detail=None):
        self.violations.append(name)
        if detail is not None:
            self.details[name] = detail


def validate_modular_data(data):
    """Run the numeric axiom checks and return a :class:`ValidationReport`.

    Checks (report entry names in parentheses): S symmetric ("S-symmetry"),
    S invertible within tolerance ("S-invertibility"), dual an involution
    ("dual-involution") fixing the unit ("dual-zero"), theta(0) = 1
    ("theta-zero"), theta(dual(i)) = theta(i) ("theta-dual") and
    dim(dual(i)) = dim(i) ("dim-dual").
    """
    report = ValidationReport()
    S, tol = data.S, data.tol
    asym = float(np.max(np.abs(S - S.T)))
    if asym > tol:
        report.add("S-symmetry", asym)
    smin = float(np.linalg.svd(S, compute_uv=False)[-1])
    if smin <= tol * max(1.0, float(np.max(np.abs(S)))):
        report.add("S-invertibility", smin)
    bad = [a for a in data.labels if data.dual[data.dual[a]] != a]
    if bad:
        report.add("dual-involution", bad)
    if data.dual[data.zero] != data.zero:
        report.add("dual-zero", data.dual[data.zero])
    if abs(data.theta[data.zero] - 1.0) > tol:
        report.add("theta-zero", data.theta[data.zero])
    bad = [a for a in data.labels if abs(data.theta[data.dual[a]] - data.theta[a]) > tol]
    if bad:
        report.add("theta-dual", bad)
    dims = quantum_dims(data)
    bad = [a for i, a in enumerate(data.labels) if abs(dims[data.dual_index(i)] - dims[i]) > tol]
    if bad:
        report.add("dim-dual", bad)
    return report


def quantum_dims(data):
    """All quantum dimensions S_{0i}/S_{00} as a complex vector in label order."""
    z = data.index(data.zero)
    s00 = data.S[z, z]
    if abs(s00) <= data.tol:
        raise InvalidModularData("S_{00} vanishes; quantum dimensions undefined")
    return data.S[z, :] / s00


def quantum_dim(data, i):
    """Quantum dimension of one label."""
    return complex(quantum_dims(data)[data.index(i)])


def global_D(data):
    """Square root of sum_i dim(i)^2 with nonnegative real part."""
    total = complex(np.sum(quantum_dims(data) ** 2))
    root = cmath.sqrt(total)
    if root.real < 0 or (root.real == 0 and root.imag < 0):
        root = -root
    return root


def gauss_sum_delta(data, conjugate=False):
    """The Gauss sum sum_i theta_i^{-1} dim(i)^2.

    With `conjugate=True` the opposite twist-sign convention
    sum_i theta_i dim(i)^2 is returned instead.
    """
    dims = quantum_dims(data)
    th = np.array([data.theta[a] for a in data.labels])
    if np.min(np.abs(th)) <= data.tol:
        raise InvalidModularData("a twist vanishes; Gauss sum undefined")
    tpow = th if conjugate else 1.0 / th
    return complex(np.sum(tpow * dims**2))


def anomaly_scalar(data, s, conjugate=False):
    """(Delta^{-1} D)^s for an integer framing weight s."""
    delta = gauss_sum_delta(data, conjugate=conjugate)
    if abs(delta) <= data.tol:
        raise InvalidModularData("Gauss sum vanishes within tolerance; anomaly undefined")
    return (global_D(data) / delta) ** int(s)


def verlinde_fusion(data, atol=None):
    """Fusion multiplicities N_{ij}^k = sum_r S_{ir} S_{jr} conj(S_{kr}) / S_{0r}.

    Every entry must round to a nonnegative integer within `atol`
    (default: `data.tol`); otherwise :class:`NonIntegralFusion` is raised,
    which signals that (S, theta) is not valid modular data.
    """
    if atol is None:
        atol = data.tol
    S = data.S
    z = data.index(data.zero)
    row0 = S[z, :]
    if np.min(np.abs(row0)) <= data.tol:
        raise NonIntegralFusion("a unit-row S entry vanishes; Verlinde sum undefined")
    n = data.n
    raw = np.empty((n, n, n), dtype=complex)
    Sct = S.conj().T
    for i in range(n):
        raw[i] = (S * (S[i] / row0)) @ Sct
    rounded = np.round(raw.real)
    dev = float(np.max(np.abs(raw - rounded)))
    if dev > atol:
        raise NonIntegralFusion(f"fusion coefficients deviate from integers by {dev:.3e} > {atol:.3e}")
    if rounded.min() < 0:
        i, j, k = np.unravel_index(int(np.argmin(rounded)), rounded.shape)
        raise NonIntegralFusion(
            f"negative fusion coefficient {int(rounded[i, j, k])} at "
            f"({data.labels[i]}, {data.labels[j]}, {data.labels[k]})"
        )
    return FusionTensor(data.labels, rounded.astype(np.int64))


def fs_indicator(data, i, fusion=None):
    """Self-duality sign of a label: 0 if not self-dual, else +1 or -1.

    Computed as D^{-2} sum_{j,k} N_{jk}^i dim(j) dim(k) (theta_j/theta_k)^2,
    which vanishes on non-self-dual labels and takes the value +1 on
    orthogonal and -1 on symplectic self-dual labels.  Raises
    :class:`InvalidModularData` if the sum is not within tolerance of
    {-1, 0, +1}.
    """
    ii = data.index(i)
    if fusion is None:
        fusion = verlinde_fusion(data)
    dims = quantum_dims(data)
    th = np.array([data.theta[a] for a in data.labels])
    ratio2 = np.outer(th, 1.0 / th) ** 2
    total = complex(np.sum(fusion.N[:, :, ii] * np.outer(dims, dims) * ratio2))
    val = total / complex(np.sum(dims**2))
    # worst case measured across all built-in families is ~2e-14; allow a
    # small multiple of tol for user data computed less carefully
    atol = max(data.tol, 1e-12) * 100
    for target in (0, 1, -1):
        if abs(val - target) <= atol:
            if target != 0 and data.dual_index(ii) != ii:
                raise InvalidModularData(f"nonzero indicator {val} on non-self-dual label {i!r}")
            return target
    raise InvalidModularData(f"indicator of {i!r} is {val}, not within tolerance of -1, 0, +1")
