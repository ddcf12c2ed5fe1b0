"""Pipeline orchestration: scenario -> ordered check report.

Checks run in the construction order of the underlying material:
atlas validation, then the frame-bundle (Seifert) suite, then the
taut/transverse-Kahler suite, then cohomology with the Lefschetz and
duality verdicts.  Failures become report entries, never aborts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import atlas as atlas_mod
from . import cohomology as coh
from . import foliated as fol
from . import frame_bundle as fb
from . import simplicial as simp
from .cyclotomic import CycMatrix, CyclotomicNumber, vec
from .errors import (
    MissingSection,
    NonOrientable,
    NotPseudomanifold,
    OrbcheckError,
)
from .polyform import PolyForm, Polynomial, PolyVectorField
from .scenario import ChartSection, ComplexSection, Scenario


@dataclass
class ReportEntry:
    key: str
    value: str
    ok: Optional[bool]  # None for informational lines


@dataclass
class Report:
    scenario: str
    entries: list[ReportEntry] = field(default_factory=list)

    def add(self, key: str, value: str, ok: Optional[bool]):
        self.entries.append(ReportEntry(key, value, ok))

    def check(self, key: str, ok: bool, extra: str = ""):
        value = ("PASS" if ok else "FAIL") + ((" " + extra) if extra else "")
        self.add(key, value, ok)

    def info(self, key: str, value: str):
        self.add(key, value, None)

    @property
    def overall(self) -> bool:
        return all(e.ok for e in self.entries if e.ok is not None)

    def to_machine(self) -> str:
        lines = [f"[report {self.scenario}]"]
        for e in self.entries:
            lines.append(f"{e.key} = {e.value}")
        lines.append(f"overall = {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_human(self) -> str:
        lines = [f"Scenario: {self.scenario}"]
        for e in self.entries:
            mark = "  " if e.ok is None else ("ok" if e.ok else "!!")
            lines.append(f"  [{mark}] {e.key} = {e.value}")
        lines.append(f"Overall: {'PASS' if self.overall else 'FAIL'}")
        return "\n".join(lines) + "\n"


# -- atlas construction ---------------------------------------------------


def build_chart(section: ChartSection, cap: int = 64) -> atlas_mod.Chart:
    order = section.cyclotomic_order
    gens = []
    for mat in section.generators:
        rows = [[CyclotomicNumber(order, coeffs) for coeffs in row] for row in mat]
        gens.append(CycMatrix(order, rows))
    if gens:
        group = atlas_mod.group_closure(gens, cap)
    else:
        group = atlas_mod.FiniteMatrixGroup.trivial(order, section.n)
    return atlas_mod.Chart(section.id, section.n, order, section.radius, group)


def build_atlas(scenario: Scenario, cap: int = 64) -> atlas_mod.OrbifoldAtlas:
    charts = [build_chart(c, cap) for c in scenario.charts]
    by_id = {c.id: c for c in charts}
    changes = []
    for ch in scenario.changes:
        order = by_id[ch.source].cyclotomic_order
        linear = CycMatrix(
            order, [[CyclotomicNumber(order, e) for e in row] for row in ch.linear]
        )
        offset = tuple(CyclotomicNumber(order, e) for e in ch.offset)
        center = tuple(CyclotomicNumber(order, e) for e in ch.center)
        changes.append(
            atlas_mod.ChangeOfChart(
                ch.source, ch.target, linear, offset, atlas_mod.Ball(center, ch.radius)
            )
        )
    return atlas_mod.OrbifoldAtlas(charts, changes)


def run_atlas_pipeline(atlas: atlas_mod.OrbifoldAtlas, report: Report, samples: int = 25):
    result = atlas_mod.validate_atlas(atlas, samples)
    for entry in result.entries:
        report.check(f"atlas.{entry.check}", entry.verdict, entry.detail)
    report.check("atlas.validate", result.passed)


# -- Seifert suite --------------------------------------------------------


def _equivariance_samples(chart: atlas_mod.Chart) -> list[CycMatrix]:
    order, n = chart.cyclotomic_order, chart.n
    out = [CycMatrix.identity(order, n)]
    diag = [
        [CyclotomicNumber.zeta(order) if i == j == 0 else (CyclotomicNumber.one(order) if i == j else CyclotomicNumber.zero(order)) for j in range(n)]
        for i in range(n)
    ]
    out.append(CycMatrix(order, diag))
    if n >= 2:
        swap = [
            [CyclotomicNumber.one(order) if (i, j) in ((0, 1), (1, 0)) or (i == j and i > 1) else CyclotomicNumber.zero(order) for j in range(n)]
            for i in range(n)
        ]
        out.append(CycMatrix(order, swap))
    else:
        out.append(CycMatrix(order, [[CyclotomicNumber.zeta(order, 2)]]))
    return out


def run_seifert_pipeline(atlas: atlas_mod.OrbifoldAtlas, report: Report, grid_points: int = 25):
    for chart in sorted(atlas.charts, key=lambda c: c.id):
        frames = fb.sample_frames(chart, 10)
        free = fb.check_lifted_action_free(chart.group, frames)
        report.check(f"seifert.free.{chart.id}", free.passed, free.detail)
        eq_ok = all(
            fb.check_equivariance(g, a, frame).passed
            for g in chart.group
            for a in _equivariance_samples(chart)
            for frame in frames
        )
        report.check(f"seifert.equivariance.{chart.id}", eq_ok)
        origin = vec(chart.cyclotomic_order, [0] * chart.n)
        s, desc = fb.seifert_fiber_report(atlas, chart.id, origin)
        report.info(f"seifert.fiber.{chart.id}.origin", desc)
    for (i, j) in atlas.overlaps():
        gluing = fb.gluing_from_atlas(atlas, i, j)
        ball = gluing.changes[0].source_domain
        classes = fb.sample_classes(atlas.chart(i), ball, grid_points)
        verdicts = [fb.gluing_well_defined(gluing, cls) for cls in classes]
        ok = all(v.passed for v in verdicts)
        detail = verdicts[0].detail if verdicts else ""
        report.check(f"seifert.well_defined.{i}.{j}", ok, detail)
    overlaps = set(atlas.overlaps())
    triples = sorted(
        (i, j, k)
        for (i, j) in overlaps
        for (j2, k) in overlaps
        if j2 == j and (i, k) in overlaps
    )
    for (i, j, k) in triples:
        g_ji = fb.gluing_from_atlas(atlas, i, j)
        g_kj = fb.gluing_from_atlas(atlas, j, k)
        g_ki = fb.gluing_from_atlas(atlas, i, k)
        ball = g_ki.changes[0].source_domain
        classes = fb.sample_classes(atlas.chart(i), ball, grid_points)
        verdict = fb.cocycle_check(g_ji, g_kj, g_ki, classes)
        report.check(f"seifert.cocycle.{i}.{j}.{k}", verdict.passed, verdict.detail)


# -- taut / transverse Kahler suite --------------------------------------


def _sphere_points(d: int, count: int, seed: int) -> list[list[float]]:
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        v = [rng.gauss(0.0, 1.0) for _ in range(d)]
        norm = math.sqrt(sum(x * x for x in v))
        pts.append([x / norm for x in v])
    return pts


def run_taut_pipeline(scenario: Scenario, report: Report):
    geo = scenario.geometry
    if geo.action_type != "circle":
        raise MissingSection("taut pipeline currently handles circle actions")
    action = fol.CircleAction.circle(geo.weights)
    d = action.d
    g0 = fol.MetricField.euclidean(d)
    fields = action.fundamental_fields()
    seed = sum(ord(c) for c in scenario.name)  # stable across processes
    pts = _sphere_points(d, geo.samples, seed)

    max_det_dev = 0.0
    det_ok = True
    for pt in pts:
        m0 = fol.gram_matrix(g0, fields, pt)
        _, verdict = fol.rescaled_gram(m0, action.m, tol=1e-12)
        max_det_dev = max(max_det_dev, verdict.max_dev)
        det_ok = det_ok and verdict.passed
    report.check("taut.detM1", det_ok, f"max_dev={max_det_dev:.3e}")

    def g1_eval(point):
        m0 = fol.gram_matrix(g0, fields, point)
        u0 = fol.conformal_factor(m0, action.m)
        base = g0.evaluate(point)
        return [[float(u0) * float(x) for x in row] for row in base]

    g1 = fol.MetricField(d, evaluator=g1_eval, poly_degree=g0.poly_degree)
    vol_dev = 0.0
    vol_ok = True
    for pt in pts[: geo.orbits]:
        vol = fol.orbit_volume(g1, action, pt, nodes=geo.nodes)
        dev = abs(vol - 2 * math.pi)
        vol_dev = max(vol_dev, dev)
        vol_ok = vol_ok and dev <= geo.tol
    report.check("taut.orbit_volume", vol_ok, f"max_dev={vol_dev:.3e}")

    def u0_field(point):
        return fol.conformal_factor(fol.gram_matrix(g0, fields, point), action.m)

    def m0_field(point):
        return fol.gram_matrix(g0, fields, point)

    inv_dev_u0 = 0.0
    inv_dev_m0 = 0.0
    for pt in pts[: min(10, geo.orbits)]:
        v1 = fol.orbit_invariance_check(u0_field, pt, action, samples=16, tol=1e-12)
        v2 = fol.orbit_invariance_check(m0_field, pt, action, samples=16, tol=1e-12)
        inv_dev_u0 = max(inv_dev_u0, v1.max_dev)
        inv_dev_m0 = max(inv_dev_m0, v2.max_dev)
    report.check("taut.invariance.u0", inv_dev_u0 <= 1e-12, f"max_dev={inv_dev_u0:.3e}")
    report.check("taut.invariance.M0", inv_dev_m0 <= 1e-12, f"max_dev={inv_dev_m0:.3e}")

    # chart-level transverse Kahler fixture: (theta, x, y) with the
    # pullback flat Kahler form along the basepoint projection
    omega = PolyForm(3, 2, {(1, 2): Polynomial.constant(3, 1)})
    j_matrix = [[0, 0, 0], [0, 0, 1], [0, -1, 0]]
    vertical = [PolyVectorField.coordinate(3, 0)]
    samples = [[0.0, 0.3, -0.2], [1.0, 0.1, 0.4], [2.0, -0.5, 0.5]]
    tk = fol.transverse_kahler_check(omega, j_matrix, vertical, samples)
    report.check("tk.closed", tk.closed.passed)
    report.check("tk.kernel", tk.kernel.passed)
    report.check("tk.positive", tk.positive.passed, tk.positive.detail)


# -- cohomology / HLT / PD suite -----------------------------------------


def build_simplicial(section: ComplexSection) -> simp.SimplicialComplex:
    order = section.vertex_order or list(range(section.vertices))
    if sorted(order) != list(range(section.vertices)):
        raise MissingSection(f"vertex_order must permute 0..{section.vertices - 1}")
    return simp.SimplicialComplex(order, section.facets)


@dataclass
class QuotientSetup:
    cx: simp.SimplicialComplex
    action: simp.SimplicialGroupAction
    cq: coh.CochainComplexQ
    product: Optional[simp.ProductComplex]
    factor_cq: Optional[tuple[coh.CochainComplexQ, coh.CochainComplexQ]]
    n: int
    kahler_mode: Optional[str]


def seed_product_bases(
    cq: coh.CochainComplexQ,
    prod: simp.ProductComplex,
    left_cq: coh.CochainComplexQ,
    right_cq: coh.CochainComplexQ,
):
    """Cross-product candidates realize the Kunneth basis exactly."""
    cx = cq.cx
    for r in range(cx.dim + 1):
        cands = []
        for p in range(r + 1):
            q = r - p
            if p > left_cq.dim or q > right_cq.dim:
                continue
            for a in left_cq.cohomology_basis(p).reps:
                pa = prod.pullback_left(a, p)
                for b in right_cq.cohomology_basis(q).reps:
                    pb = prod.pullback_right(b, q)
                    cands.append(coh.cup_product(cx, pa, p, pb, q))
        cq.cohomology_basis(r, candidates=cands)


def _factor_kahler(cq: coh.CochainComplexQ) -> dict:
    """A degree-2 cocycle of a closed oriented factor with pairing 1."""
    cycle = simp.fundamental_cycle(cq.cx)
    for rep in cq.cohomology_basis(2).reps:
        pairing = simp.pair_with_cycle(rep, cycle)
        if pairing:
            return {s: v / pairing for s, v in rep.items()}
    raise OrbcheckError("factor has no degree-2 class pairing with its cycle")


def build_quotient(scenario: Scenario) -> QuotientSetup:
    qs = scenario.quotient
    section = scenario.complexes[qs.complex]
    prod = None
    factor_cq = None
    if section.product:
        lsec = scenario.complexes.get(section.product[0])
        rsec = scenario.complexes.get(section.product[1])
        if lsec is None or rsec is None:
            raise MissingSection("product factors must be declared complexes")
        left = build_simplicial(lsec)
        right = build_simplicial(rsec)
        prod = simp.product_complex(left, right)
        cx = prod.complex
    else:
        cx = build_simplicial(section)

    act_section = scenario.actions[qs.action]
    if act_section.group == "trivial":
        action = simp.SimplicialGroupAction.trivial(cx)
    elif act_section.group.startswith("cyclic:"):
        k = int(act_section.group.split(":", 1)[1])
        gen = {v: act_section.maps[v] for v in cx.vertices}
        action = simp.SimplicialGroupAction.cyclic(cx, k, gen)
    elif act_section.group == "product":
        if prod is None:
            raise MissingSection("product action requires a product complex")
        facts = act_section.factors
        left_act = _build_factor_action(scenario.actions[facts[0]], prod.left)
        right_act = _build_factor_action(scenario.actions[facts[1]], prod.right)
        action = simp.SimplicialGroupAction.product(prod, left_act, right_act)
    else:
        raise MissingSection(f"unknown group kind {act_section.group!r}")

    cq = coh.CochainComplexQ(cx)
    if prod is not None:
        left_cq = coh.CochainComplexQ(prod.left)
        right_cq = coh.CochainComplexQ(prod.right)
        seed_product_bases(cq, prod, left_cq, right_cq)
        factor_cq = (left_cq, right_cq)
    return QuotientSetup(cx, action, cq, prod, factor_cq, qs.n, qs.kahler)


def _build_factor_action(section, cx: simp.SimplicialComplex) -> simp.SimplicialGroupAction:
    if section.group == "trivial":
        return simp.SimplicialGroupAction.trivial(cx)
    if section.group.startswith("cyclic:"):
        k = int(section.group.split(":", 1)[1])
        gen = {v: section.maps[v] for v in cx.vertices}
        return simp.SimplicialGroupAction.cyclic(cx, k, gen)
    raise MissingSection(f"unsupported factor action {section.group!r}")


def run_quotient_pipeline(scenario: Scenario, report: Report):
    setup = build_quotient(scenario)
    ok, msg = simp.verify_action(setup.action)
    report.check("quotient.action", ok, msg)
    if not ok:
        return
    cq = setup.cq
    betti = cq.betti_numbers()
    report.info("betti.full", ",".join(str(b) for b in betti))
    invariant = coh.InvariantCohomology(cq, setup.action)
    inv_betti = [invariant.invariant_betti(p) for p in range(cq.dim + 1)]
    report.info("betti.inv", ",".join(str(b) for b in inv_betti))

    try:
        cycle = simp.fundamental_cycle(setup.cx)
        for e in setup.action.elements:
            if setup.action.transform_cycle(e, cycle) != cycle:
                raise NonOrientable("fundamental cycle is not action-invariant")
    except (NonOrientable, NotPseudomanifold) as exc:
        report.check("pd.fundamental_cycle", False, type(exc).__name__)
        return
    report.check("pd.fundamental_cycle", True)

    n = setup.n
    explicit = None
    if setup.kahler_mode == "product-sum":
        left_cq, right_cq = setup.factor_cq
        wl = _factor_kahler(left_cq)
        wr = _factor_kahler(right_cq)
        pa = setup.product.pullback_left(wl, 2)
        pb = setup.product.pullback_right(wr, 2)
        explicit = dict(pa)
        for s, v in pb.items():
            nv = explicit.get(s, Fraction(0)) + v
            if nv:
                explicit[s] = nv
            else:
                explicit.pop(s, None)
    try:
        omega = coh.kahler_class(invariant, cycle, n, explicit)
    except OrbcheckError as exc:
        report.check("kahler.class", False, type(exc).__name__)
        return
    report.info("kahler.pairing", str(omega.pairing))
    for k in range(n + 1):
        entry = coh.lefschetz_verify(invariant, omega, k)
        report.add(
            f"hlt.k{k}",
            ("ISO" if entry.iso else "FAIL")
            + f" rank={entry.rank} dims={entry.source_dim}x{entry.target_dim}",
            entry.iso,
        )
    for entry in coh.poincare_duality_verify(invariant, cycle, n):
        report.check(
            f"pd.p{entry.p}",
            entry.nondegenerate,
            f"rank={entry.rank} dims={entry.dim_p}x{entry.dim_q}",
        )


# -- entry point ----------------------------------------------------------


def run_pipeline(scenario: Scenario, samples: Optional[int] = None, tol: Optional[float] = None) -> Report:
    report = Report(scenario.name)
    if samples is not None and scenario.geometry is not None:
        scenario.geometry.samples = samples
    if tol is not None and scenario.geometry is not None:
        scenario.geometry.tol = tol
    grid = samples if samples is not None else 25
    atlas = None
    if "atlas" in scenario.pipelines or "seifert" in scenario.pipelines:
        atlas = build_atlas(scenario)
    if "atlas" in scenario.pipelines:
        run_atlas_pipeline(atlas, report, grid)
    if "seifert" in scenario.pipelines:
        run_seifert_pipeline(atlas, report, grid)
    if "taut" in scenario.pipelines:
        run_taut_pipeline(scenario, report)
    if "quotient" in scenario.pipelines:
        run_quotient_pipeline(scenario, report)
    return report
