"""Taut-metric and transverse-Kahler checks on chart-level group actions.

The geometric statements are verified where the proofs evaluate them:
on a chart times the acting group.  Gram matrices of fundamental
fields, the conformal factor u0 = det(M0)^(-1/m), orbit volumes and
the transverse Kahler conditions are computed exactly on rational
input and in floating point (with declared tolerances) on sampled
orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import DegenerateOrbit, NonPositiveDeterminant, QuadratureTooCoarse
from .linalg import dense_det, rational_root
from .polyform import PolyForm, Polynomial, PolyVectorField

Number = Union[Fraction, float]


@dataclass
class Verdict:
    passed: bool
    max_dev: float = 0.0
    detail: str = ""

    def __bool__(self):
        return self.passed


class CircleAction:
    """Torus action on C^n by diagonal rotations with integer weights.

    Each generator row (w_1..w_n) acts by z_k -> exp(i w_k t) z_k on the
    real coordinates (x_1, y_1, ..., x_n, y_n).
    """

    def __init__(self, weight_rows: Sequence[Sequence[int]]):
        self.weight_rows = [list(map(int, row)) for row in weight_rows]
        self.n = len(self.weight_rows[0])
        for row in self.weight_rows:
            if len(row) != self.n:
                raise ValueError("weight rows must share length")
        self.d = 2 * self.n
        self.m = len(self.weight_rows)

    @classmethod
    def circle(cls, weights: Sequence[int]) -> "CircleAction":
        return cls([list(weights)])

    def fundamental_field(self, generator: int) -> PolyVectorField:
        """Exact derivative at t = 0 of the one-parameter rotation."""
        w = self.weight_rows[generator]
        comps = []
        for k in range(self.n):
            d = self.d
            x = Polynomial.variable(d, 2 * k)
            y = Polynomial.variable(d, 2 * k + 1)
            comps.append(-w[k] * y)  # d/dt (cos - sin) at 0
            comps.append(w[k] * x)
        return PolyVectorField(comps)

    def fundamental_fields(self) -> list[PolyVectorField]:
        return [self.fundamental_field(g) for g in range(self.m)]

    def rotate(self, angles: Sequence[float], point: Sequence[float]) -> list[float]:
        out = list(map(float, point))
        for g, t in enumerate(angles):
            w = self.weight_rows[g]
            nxt = []
            for k in range(self.n):
                c, s = math.cos(w[k] * t), math.sin(w[k] * t)
                x, y = out[2 * k], out[2 * k + 1]
                nxt.extend([c * x - s * y, s * x + c * y])
            out = nxt
        return out

    def rotation_matrix(self, angles: Sequence[float]) -> list[list[float]]:
        out = [[float(i == j) for j in range(self.d)] for i in range(self.d)]
        for g, t in enumerate(angles):
            w = self.weight_rows[g]
            rot = [[0.0] * self.d for _ in range(self.d)]
            for k in range(self.n):
                c, s = math.cos(w[k] * t), math.sin(w[k] * t)
                rot[2 * k][2 * k] = c
                rot[2 * k][2 * k + 1] = -s
                rot[2 * k + 1][2 * k] = s
                rot[2 * k + 1][2 * k + 1] = c
            out = [[sum(rot[i][k] * out[k][j] for k in range(self.d)) for j in range(self.d)] for i in range(self.d)]
        return out


class FiniteOrthogonalAction:
    """A finite group of exact rational orthogonal matrices on R^d."""

    def __init__(self, matrices: Sequence[Sequence[Sequence[Fraction]]]):
        self.matrices = [[[Fraction(x) for x in row] for row in m] for m in matrices]
        self.d = len(self.matrices[0])
        self.m = 0  # no continuous directions

    def transform(self, g: int, point: Sequence) -> list:
        mat = self.matrices[g]
        return [sum(mat[i][k] * point[k] for k in range(self.d)) for i in range(self.d)]


class MetricField:
    """Symmetric metric on R^d, polynomial entries or a plain evaluator."""

    def __init__(
        self,
        d: int,
        entries: Optional[Sequence[Sequence[Polynomial]]] = None,
        evaluator: Optional[Callable] = None,
        poly_degree: Optional[int] = None,
    ):
        self.d = d
        self.entries = entries
        self._evaluator = evaluator
        if entries is not None:
            self.poly_degree = max(p.total_degree() for row in entries for p in row)
        else:
            self.poly_degree = poly_degree

    @classmethod
    def euclidean(cls, d: int) -> "MetricField":
        entries = [
            [Polynomial.constant(d, 1 if i == j else 0) for j in range(d)] for i in range(d)
        ]
        return cls(d, entries=entries)

    @classmethod
    def from_polynomials(cls, entries: Sequence[Sequence[Polynomial]]) -> "MetricField":
        d = len(entries)
        for i in range(d):
            for j in range(d):
                if not (entries[i][j] - entries[j][i]).is_zero():
                    raise ValueError("metric entries must be symmetric")
        return cls(d, entries=entries)

    def evaluate(self, point: Sequence) -> list[list[Number]]:
        if self._evaluator is not None:
            return self._evaluator(point)
        return [[p.evaluate(point) for p in row] for row in self.entries]


def fundamental_field(action: CircleAction, generator: int, point: Sequence) -> list:
    """Value of the generator's fundamental vector field at a point."""
    return action.fundamental_field(generator).evaluate(point)


def gram_matrix(
    metric: MetricField, fields: Sequence[PolyVectorField], point: Sequence
) -> list[list[Number]]:
    """M0[point]: metric pairings of fundamental fields; positive definite."""
    g = metric.evaluate(point)
    vals = [f.evaluate(point) for f in fields]
    m = len(fields)
    d = metric.d
    out = [[sum(vals[k][i] * g[i][j] * vals[l][j] for i in range(d) for j in range(d)) for l in range(m)] for k in range(m)]
    det = _det(out)
    if (isinstance(det, Fraction) and det == 0) or (isinstance(det, float) and abs(det) < 1e-12):
        raise DegenerateOrbit("Gram matrix is singular: orbit has lower dimension")
    return out


def _det(mat: list[list[Number]]) -> Number:
    if all(isinstance(x, Fraction) for row in mat for x in row):
        return dense_det(mat)
    n = len(mat)
    m = [[float(x) for x in row] for row in mat]
    det = 1.0
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if abs(m[piv][col]) == 0:
            return 0.0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= f * m[col][c]
    return det


def conformal_factor(m0: list[list[Number]], m: int) -> Number:
    """u0 = det(M0)^(-1/m); exact when the m-th root is rational."""
    det = _det(m0)
    if (isinstance(det, Fraction) and det <= 0) or (isinstance(det, float) and det <= 0):
        raise NonPositiveDeterminant(f"det M0 = {det}")
    if isinstance(det, Fraction):
        root = rational_root(det, m)
        if root is not None:
            return Fraction(1) / root
        return float(det) ** (-1.0 / m)
    return det ** (-1.0 / m)


def rescaled_gram(m0: list[list[Number]], m: int, tol: float = 1e-12):
    """M1 = u0 M0 with the determinant-one verdict."""
    u0 = conformal_factor(m0, m)
    m1 = [[u0 * x for x in row] for row in m0]
    det = _det(m1)
    if isinstance(det, Fraction):
        dev = abs(float(det - 1))
        ok = det == 1
    else:
        dev = abs(det - 1.0)
        ok = dev <= tol
    return m1, Verdict(ok, dev, "det M1 = 1")


def orbit_invariance_check(
    field: Callable[[Sequence], object],
    point: Sequence,
    action: CircleAction,
    samples: int = 16,
    tol: float = 1e-12,
) -> Verdict:
    """Constancy of a scalar or matrix field along the sampled orbit."""
    base = field([float(x) for x in point])
    max_dev = 0.0
    for idx in range(samples):
        t = 2 * math.pi * (idx + 1) / (samples + 1)
        moved = action.rotate([t] * action.m, point)
        val = field(moved)
        max_dev = max(max_dev, _deviation(base, val))
    return Verdict(max_dev <= tol, max_dev)


def _deviation(a, b) -> float:
    if isinstance(a, (int, float, Fraction)):
        return abs(float(a) - float(b))
    return max(
        abs(float(x) - float(y)) for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def required_nodes(metric: MetricField) -> int:
    """Node count making equispaced circle quadrature exact for the metric."""
    if metric.poly_degree is None:
        raise ValueError("metric has no declared polynomial degree")
    return metric.poly_degree + 3  # trig degree of pullback entries is deg + 2


def average_metric(
    metric: MetricField,
    action,
    nodes: Optional[int] = None,
) -> MetricField:
    """Group average of a metric; exact for finite groups, equispaced
    trigonometric quadrature for circle factors."""
    if isinstance(action, FiniteOrthogonalAction):
        mats = action.matrices
        d = action.d

        def evaluate(point):
            acc = None
            for g in mats:
                moved = [sum(g[i][k] * point[k] for k in range(d)) for i in range(d)]
                m = metric.evaluate(moved)
                pulled = [
                    [
                        sum(g[a][i] * m[a][b] * g[b][j] for a in range(d) for b in range(d))
                        for j in range(d)
                    ]
                    for i in range(d)
                ]
                if acc is None:
                    acc = pulled
                else:
                    acc = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(acc, pulled)]
            k = Fraction(1, len(mats)) if isinstance(acc[0][0], Fraction) else 1.0 / len(mats)
            return [[k * x for x in row] for row in acc]

        return MetricField(d, evaluator=evaluate, poly_degree=metric.poly_degree)

    need = required_nodes(metric)
    if nodes is None:
        nodes = max(need, 8)
    if nodes < need:
        raise QuadratureTooCoarse(f"need at least {need} nodes, got {nodes}")
    d = action.d

    def evaluate(point):
        pt = [float(x) for x in point]
        acc = [[0.0] * d for _ in range(d)]
        for idx in range(nodes):
            t = 2 * math.pi * idx / nodes
            rot = action.rotation_matrix([t] * action.m)
            moved = [sum(rot[i][k] * pt[k] for k in range(d)) for i in range(d)]
            m = [[float(x) for x in row] for row in metric.evaluate(moved)]
            for i in range(d):
                for j in range(d):
                    acc[i][j] += sum(
                        rot[a][i] * m[a][b] * rot[b][j] for a in range(d) for b in range(d)
                    )
        return [[x / nodes for x in row] for row in acc]

    return MetricField(d, evaluator=evaluate, poly_degree=metric.poly_degree)


def orbit_volume(
    metric: MetricField,
    action: CircleAction,
    point: Sequence,
    nodes: int = 256,
) -> float:
    """Integral over the circle of (det Gram)^(1/2) along the orbit.

    For the rescaled metric the integrand is identically 1 and the
    volume equals the group frame volume 2*pi.
    """
    if action.m != 1:
        raise ValueError("orbit volume is implemented for one-circle actions")
    fields = action.fundamental_fields()
    vals = []
    for idx in range(nodes):
        t = 2 * math.pi * idx / nodes
        moved = action.rotate([t], point)
        m = gram_matrix(metric, fields, moved)
        det = _det(m)
        det = float(det)
        if det <= 0:
            raise DegenerateOrbit("non-positive Gram determinant along orbit")
        vals.append(math.sqrt(det))
    return 2 * math.pi * math.fsum(vals) / nodes


def split_metric(
    g1: MetricField,
    omega: PolyForm,
    j_matrix: Sequence[Sequence[float]],
    vertical_fields: Sequence[PolyVectorField],
) -> MetricField:
    """Blockwise metric: g1 on vertical pairs, h = omega(J.,.) on normal
    pairs, zero across; orbit Gram matrices are unchanged."""
    import numpy as np

    d = g1.d
    jm = np.array([[float(x) for x in row] for row in j_matrix])

    def evaluate(point):
        pt = [float(x) for x in point]
        gmat = np.array([[float(x) for x in row] for row in g1.evaluate(pt)])
        vert = np.array([[float(v) for v in f.evaluate(pt)] for f in vertical_fields]).T
        m = vert.shape[1]
        # g1-orthogonal complement of the vertical span
        constraints = vert.T @ gmat  # m x d
        _, _, vh = np.linalg.svd(constraints)
        normal = vh[m:].T  # d x (d-m)
        omat = np.array(omega.evaluate_two_form(pt))
        h_block = normal.T @ (jm.T @ omat.T) @ normal
        h_block = 0.5 * (h_block + h_block.T)
        p = np.hstack([vert, normal])
        b = np.zeros((d, d))
        b[:m, :m] = vert.T @ gmat @ vert
        b[m:, m:] = h_block
        pinv = np.linalg.inv(p)
        return (pinv.T @ b @ pinv).tolist()

    return MetricField(d, evaluator=evaluate, poly_degree=g1.poly_degree)


@dataclass
class TransverseKahlerVerdict:
    closed: Verdict
    kernel: Verdict
    positive: Verdict

    @property
    def passed(self):
        return bool(self.closed) and bool(self.kernel) and bool(self.positive)


def transverse_kahler_check(
    omega: PolyForm,
    j_matrix: Sequence[Sequence[float]],
    vertical_fields: Sequence[PolyVectorField],
    sample_points: Sequence[Sequence[float]],
    tol: float = 1e-9,
) -> TransverseKahlerVerdict:
    """(a) d omega = 0 exactly, (b) vertical contractions vanish exactly,
    (c) omega(J.,.) positive definite on the normal space at samples."""
    import numpy as np

    closed = Verdict(omega.exterior_derivative().is_zero(), detail="d omega = 0")
    kernel_ok = all(omega.contract(v).is_zero() for v in vertical_fields)
    kernel = Verdict(kernel_ok, detail="vertical contractions vanish")

    d = omega.d
    jm = np.array([[float(x) for x in row] for row in j_matrix])
    min_eig = math.inf
    sym_dev = 0.0
    for pt in sample_points:
        ptf = [float(x) for x in pt]
        vert = np.array([[float(v) for v in f.evaluate(ptf)] for f in vertical_fields]).T
        m = vert.shape[1]
        _, _, vh = np.linalg.svd(vert.T) if m else (None, None, np.eye(d))
        normal = vh[m:].T
        omat = np.array(omega.evaluate_two_form(ptf))
        # omega(J u, v) = (J u)^T Omega v on the normal basis
        bmat = np.array(
            [
                [float((jm @ normal[:, a]) @ omat @ normal[:, b]) for b in range(normal.shape[1])]
                for a in range(normal.shape[1])
            ]
        )
        sym_dev = max(sym_dev, float(np.max(np.abs(bmat - bmat.T))))
        eigs = np.linalg.eigvalsh(0.5 * (bmat + bmat.T))
        min_eig = min(min_eig, float(eigs.min()))
    positive = Verdict(
        sym_dev <= tol and min_eig > tol,
        max_dev=sym_dev,
        detail=f"min eigenvalue {min_eig:.3e}",
    )
    return TransverseKahlerVerdict(closed, kernel, positive)


def basic_form_check(alpha: PolyForm, vertical_fields: Sequence[PolyVectorField]) -> Verdict:
    """iota_Z alpha = 0 = iota_Z d(alpha), exactly, for every vertical Z."""
    da = alpha.exterior_derivative()
    for z in vertical_fields:
        if not alpha.contract(z).is_zero():
            return Verdict(False, detail="iota_Z alpha != 0")
        if not da.contract(z).is_zero():
            return Verdict(False, detail="iota_Z d alpha != 0")
    return Verdict(True, detail="both contractions vanish identically")
