"""Simplicial cohomology over exact rationals with group averaging,
Alexander-Whitney cup products, and the Lefschetz / duality verdicts.

Cochains exposed to callers are dicts keyed by sorted vertex-position
tuples; the linear algebra runs on integer-indexed sparse vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NoKahlerClass
from .linalg import (
    build_echelon,
    dense_rank,
    dense_solve,
    kernel_search,
    reduce_against,
)
from .simplicial import (
    Simplex,
    SimplicialComplex,
    SimplicialGroupAction,
    pair_with_cycle,
)

Cochain = dict  # Simplex -> Fraction


class _CoordEchelon:
    """Echelon set that remembers coordinates of inserted vectors."""

    def __init__(self):
        self.pivots: dict[int, tuple[dict, Fraction]] = {}
        self.coords: dict[int, dict[int, Fraction]] = {}
        self.count = 0

    def insert(self, v: dict) -> bool:
        v = dict(v)
        record: list = []
        reduce_against(v, self.pivots, record)
        if not v:
            return False
        comb = {self.count: Fraction(1)}
        for prow, factor in record:
            for cj, cv in self.coords[prow].items():
                nv = comb.get(cj, Fraction(0)) - factor * cv
                if nv:
                    comb[cj] = nv
                else:
                    comb.pop(cj, None)
        r = max(v)
        self.pivots[r] = (v, v[r])
        self.coords[r] = comb
        self.count += 1
        return True

    def express(self, v: dict) -> Optional[list[Fraction]]:
        """Coordinates of v in the inserted basis, or None if outside."""
        v = dict(v)
        record: list = []
        reduce_against(v, self.pivots, record)
        if v:
            return None
        comb: dict[int, Fraction] = {}
        for prow, factor in record:
            for cj, cv in self.coords[prow].items():
                comb[cj] = comb.get(cj, Fraction(0)) + factor * cv
        return [comb.get(i, Fraction(0)) for i in range(self.count)]


@dataclass
class CohomologyBasis:
    degree: int
    reps: list  # tuple-keyed cocycle representatives
    residues: list  # index-keyed canonical residues mod coboundaries
    echelon: _CoordEchelon


class CochainComplexQ:
    """Coboundary matrices and cohomology data of a simplicial complex."""

    def __init__(self, cx: SimplicialComplex):
        self.cx = cx
        self.dim = cx.dim
        self._delta_cols: dict[int, list[dict]] = {}
        for p in range(self.dim + 1):
            cols = [dict() for _ in cx.simplices[p]]
            if p < self.dim:
                idx_p = cx.index[p]
                for row, tau in enumerate(cx.simplices[p + 1]):
                    for i in range(len(tau)):
                        face = tau[:i] + tau[i + 1 :]
                        j = idx_p.get(face)
                        if j is not None:
                            cols[j][row] = Fraction(-1 if i % 2 else 1)
            self._delta_cols[p] = cols
        self._image_echelon: dict[int, dict] = {}
        self._rank: dict[int, int] = {}
        self._basis: dict[int, CohomologyBasis] = {}

    # -- indexing helpers --------------------------------------------

    def to_indexed(self, cochain: Cochain, p: int) -> dict:
        idx = self.cx.index[p]
        return {idx[s]: Fraction(v) for s, v in cochain.items() if v}

    def to_tuple_keyed(self, vec: dict, p: int) -> Cochain:
        simplices = self.cx.simplices[p]
        return {simplices[i]: v for i, v in vec.items() if v}

    def apply_delta(self, cochain: Cochain, p: int) -> Cochain:
        cols = self._delta_cols[p]
        out: dict[int, Fraction] = {}
        for s, v in cochain.items():
            j = self.cx.index[p][s]
            for row, c in cols[j].items():
                nv = out.get(row, Fraction(0)) + v * c
                if nv:
                    out[row] = nv
                else:
                    out.pop(row, None)
        return self.to_tuple_keyed(out, p + 1)

    def is_cocycle(self, cochain: Cochain, p: int) -> bool:
        return p == self.dim or not self.apply_delta(cochain, p)

    # -- ranks and betti ---------------------------------------------

    def rank_delta(self, p: int) -> int:
        """Rank of the coboundary C^p -> C^(p+1)."""
        if p < 0 or p >= self.dim:
            return 0
        if p not in self._rank:
            self.image_echelon(p + 1)
        return self._rank[p]

    def image_echelon(self, p: int) -> dict:
        """Echelonized image of delta_(p-1) inside C^p."""
        if p not in self._image_echelon:
            if p == 0 or p > self.dim:
                self._image_echelon[p] = {}
            else:
                pivots, rank = build_echelon(self._delta_cols[p - 1])
                self._image_echelon[p] = pivots
                self._rank[p - 1] = rank
        return self._image_echelon[p]

    def betti(self, p: int) -> int:
        if p < 0 or p > self.dim:
            return 0
        return self.cx.count(p) - self.rank_delta(p) - self.rank_delta(p - 1)

    def betti_numbers(self) -> list[int]:
        return [self.betti(p) for p in range(self.dim + 1)]

    def residue(self, vec: dict, p: int) -> dict:
        """Canonical representative of a cochain modulo coboundaries."""
        v = dict(vec)
        reduce_against(v, self.image_echelon(p))
        return v

    # -- cohomology bases --------------------------------------------

    def cohomology_basis(self, p: int, candidates: Optional[list[Cochain]] = None) -> CohomologyBasis:
        if p in self._basis:
            return self._basis[p]
        b = self.betti(p)
        basis = CohomologyBasis(p, [], [], _CoordEchelon())
        if b == 0:
            self._basis[p] = basis
            return basis
        if candidates is not None:
            for cand in candidates:
                if not self.is_cocycle(cand, p):
                    raise ValueError(f"candidate in degree {p} is not a cocycle")
                res = self.residue(self.to_indexed(cand, p), p)
                if basis.echelon.insert(res):
                    basis.reps.append(dict(cand))
                    basis.residues.append(res)
            if len(basis.reps) != b:
                raise ValueError(
                    f"candidates span {len(basis.reps)} of {b} dimensions in degree {p}"
                )
        else:
            simplices = self.cx.simplices[p]

            def keep(comb: dict) -> bool:
                cocycle = {simplices[j]: c for j, c in comb.items()}
                res = self.residue(self.to_indexed(cocycle, p), p)
                if basis.echelon.insert(res):
                    basis.reps.append(cocycle)
                    basis.residues.append(res)
                    return True
                return False

            rank = kernel_search(self._delta_cols[p], keep, b)
            self._rank[p] = rank
            if len(basis.reps) != b:
                raise AssertionError("kernel search did not span cohomology")
        self._basis[p] = basis
        return basis

    def coords(self, cochain: Cochain, p: int) -> list[Fraction]:
        """Coordinates of a cocycle's class in the degree-p basis."""
        basis = self.cohomology_basis(p)
        res = self.residue(self.to_indexed(cochain, p), p)
        out = basis.echelon.express(res)
        if out is None:
            raise ValueError("cochain is not in the span of the cohomology basis")
        return out


def cup_product(cx: SimplicialComplex, alpha: Cochain, p: int, beta: Cochain, q: int) -> Cochain:
    """Alexander-Whitney cup product on the fixed vertex order."""
    out: Cochain = {}
    for s in cx.simplices[p + q]:
        front = s[: p + 1]
        back = s[p:]
        a = alpha.get(front)
        if not a:
            continue
        b = beta.get(back)
        if not b:
            continue
        out[s] = a * b
    return out


def cup_power(cx: SimplicialComplex, alpha: Cochain, p: int, k: int) -> tuple[Cochain, int]:
    """k-fold cup power of a p-cochain; returns (cochain, degree)."""
    if k == 0:
        unit = {s: Fraction(1) for s in cx.simplices[0]}
        return unit, 0
    acc, deg = dict(alpha), p
    for _ in range(k - 1):
        acc = cup_product(cx, acc, deg, alpha, p)
        deg += p
    return acc, deg


@dataclass
class InvariantDegree:
    degree: int
    projector: list[list[Fraction]]
    vectors: list[list[Fraction]]  # invariant classes, coords in the full basis
    cochains: list  # matching cocycle representatives

    @property
    def dim(self) -> int:
        return len(self.vectors)


class InvariantCohomology:
    """Averaging projector and invariant bases, degree by degree."""

    def __init__(self, complex_q: CochainComplexQ, action: SimplicialGroupAction):
        self.cq = complex_q
        self.action = action
        self._data: dict[int, InvariantDegree] = {}

    def action_matrix(self, e: str, p: int) -> list[list[Fraction]]:
        basis = self.cq.cohomology_basis(p)
        b = len(basis.reps)
        cols = []
        for rep in basis.reps:
            pulled = self.action.pullback_cochain(e, rep, p)
            cols.append(self.cq.coords(pulled, p))
        return [[cols[j][i] for j in range(b)] for i in range(b)]

    def degree(self, p: int) -> InvariantDegree:
        if p in self._data:
            return self._data[p]
        basis = self.cq.cohomology_basis(p)
        b = len(basis.reps)
        order = len(self.action.elements)
        proj = [[Fraction(0)] * b for _ in range(b)]
        for e in self.action.elements:
            mat = self.action_matrix(e, p)
            for i in range(b):
                for j in range(b):
                    proj[i][j] += mat[i][j]
        proj = [[x / order for x in row] for row in proj]
        # invariant subspace = column space of the projector
        ech = _CoordEchelon()
        vectors = []
        for j in range(b):
            col = {i: proj[i][j] for i in range(b) if proj[i][j]}
            if ech.insert(col):
                vectors.append([proj[i][j] for i in range(b)])
        cochains = []
        for vec in vectors:
            acc: Cochain = {}
            for coeff, rep in zip(vec, basis.reps):
                if not coeff:
                    continue
                for s, v in rep.items():
                    nv = acc.get(s, Fraction(0)) + coeff * v
                    if nv:
                        acc[s] = nv
                    else:
                        acc.pop(s, None)
            cochains.append(acc)
        data = InvariantDegree(p, proj, vectors, cochains)
        self._data[p] = data
        return data

    def invariant_betti(self, p: int) -> int:
        return self.degree(p).dim

    def invariant_coords(self, cochain: Cochain, p: int) -> list[Fraction]:
        """Coordinates of an invariant class in the invariant basis."""
        data = self.degree(p)
        full = self.cq.coords(cochain, p)
        b = len(full)
        a = [[data.vectors[j][i] for j in range(data.dim)] for i in range(b)]
        sol = dense_solve(a, full) if data.dim else ([] if all(x == 0 for x in full) else None)
        if sol is None:
            raise ValueError("class is not invariant")
        return sol


@dataclass
class KahlerClassRep:
    cochain: Cochain
    n: int
    pairing: Fraction


def kahler_class(
    invariant: InvariantCohomology,
    cycle: dict[Simplex, int],
    n: int,
    explicit: Optional[Cochain] = None,
) -> KahlerClassRep:
    """An invariant 2-cocycle with nonvanishing top cup power.

    Scans the invariant degree-2 basis (or verifies an explicit
    candidate) and normalizes to an integer top pairing.
    """
    cq = invariant.cq
    cx = cq.cx
    candidates = []
    if explicit is not None:
        candidates.append(explicit)
    candidates.extend(invariant.degree(2).cochains)
    for cand in candidates:
        if not cq.is_cocycle(cand, 2):
            continue
        power, deg = cup_power(cx, cand, 2, n)
        pairing = pair_with_cycle(power, cycle)
        if pairing:
            # verify class-level invariance
            try:
                invariant.invariant_coords(cand, 2)
            except ValueError:
                continue
            denoms = [v.denominator for v in cand.values()]
            scale = Fraction(1)
            if denoms:
                from math import lcm

                scale = Fraction(lcm(*denoms))
            scaled = {s: v * scale for s, v in cand.items()}
            power, _ = cup_power(cx, scaled, 2, n)
            return KahlerClassRep(scaled, n, pair_with_cycle(power, cycle))
    raise NoKahlerClass("no invariant degree-2 class has nonzero top cup power")


@dataclass
class LefschetzEntry:
    k: int
    source_dim: int
    target_dim: int
    rank: int
    matrix: list[list[Fraction]]

    @property
    def iso(self) -> bool:
        return self.source_dim == self.target_dim and self.rank == self.source_dim


def lefschetz_verify(
    invariant: InvariantCohomology, omega: KahlerClassRep, k: int
) -> LefschetzEntry:
    """Matrix of cup with omega^k from invariant H^(n-k) to H^(n+k)."""
    n = omega.n
    cq = invariant.cq
    src = invariant.degree(n - k)
    tgt = invariant.degree(n + k)
    power, pdeg = cup_power(cq.cx, omega.cochain, 2, k)
    cols = []
    for alpha in src.cochains:
        image = cup_product(cq.cx, alpha, n - k, power, pdeg) if k else dict(alpha)
        cols.append(invariant.invariant_coords(image, n + k))
    matrix = [[cols[j][i] for j in range(src.dim)] for i in range(tgt.dim)]
    rank = dense_rank(matrix) if src.dim and tgt.dim else 0
    return LefschetzEntry(k, src.dim, tgt.dim, rank, matrix)


@dataclass
class PairingEntry:
    p: int
    dim_p: int
    dim_q: int
    rank: int

    @property
    def nondegenerate(self) -> bool:
        return self.dim_p == self.dim_q and self.rank == self.dim_p


def poincare_duality_verify(
    invariant: InvariantCohomology, cycle: dict[Simplex, int], n: int
) -> list[PairingEntry]:
    """Cup pairing of invariant H^p with H^(2n-p) against the cycle."""
    cq = invariant.cq
    out = []
    for p in range(2 * n + 1):
        src = invariant.degree(p)
        tgt = invariant.degree(2 * n - p)
        matrix = []
        for a in src.cochains:
            row = []
            for b in tgt.cochains:
                prod = cup_product(cq.cx, a, p, b, 2 * n - p)
                row.append(pair_with_cycle(prod, cycle))
            matrix.append(row)
        rank = dense_rank(matrix) if src.dim and tgt.dim else 0
        out.append(PairingEntry(p, src.dim, tgt.dim, rank))
    return out
