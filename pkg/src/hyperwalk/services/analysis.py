# Glue between the engine modules and the report models
import logging
import math
from typing import Optional, Union

from hyperwalk.config import get_settings
from hyperwalk.convolution import ConvolutionRow, ConvolutionTable, check_well_defined, convolution_table, format_rational
from hyperwalk.exceptions import InvalidUsageError, NotASchemeError
from hyperwalk.generators import build, parse_spec, parse_vertex_key, search_graphs
from hyperwalk.graph.core import FiniteGraph, LazyGraph, Vertex, metrics
from hyperwalk.hypergroup import Failure, classify_base_points, productive_pairs, productivity, verdict_for_table
from hyperwalk.models import (
    AnalyzeReport,
    ClassReport,
    ConvolutionReport,
    CrosscheckReport,
    FailureReport,
    IntersectionArrayReport,
    McReport,
    MetricsReport,
    RegularityWitnessReport,
    Row,
    SchemeReport,
    SearchConfig,
    SearchHit,
    SearchReport,
    VerdictReport,
)
from hyperwalk.montecarlo import mc_estimate
from hyperwalk.scheme import (
    check_distance_regular,
    drg_coefficient_crosscheck,
    intersection_numbers,
    srg_parameters,
    verify_scheme_identities,
)

logger = logging.getLogger("hyperwalk.analysis")

Graph = Union[FiniteGraph, LazyGraph]


def vertex_key(v: Vertex) -> Union[int, str, list[int]]:
    return list(v) if isinstance(v, tuple) else v


def row_report(row: Optional[ConvolutionRow]) -> Optional[Row]:
    if row is None:
        return None
    return [(k, format_rational(q)) for k, q in row]


def table_report(t: ConvolutionTable) -> ConvolutionReport:
    rows = {f"{i},{j}": row_report(t.row(i, j)) for i, j in t.reported_pairs()}
    return ConvolutionReport(base=vertex_key(t.base), max_level=t.max_level, exact=True, rows=rows)


def failure_report(failure: Failure) -> FailureReport:
    return FailureReport(
        axiom=failure.axiom,
        witness=[vertex_key(w) for w in failure.witness],
        lhs=row_report(failure.lhs),
        rhs=row_report(failure.rhs),
        detail=failure.detail,
    )


class AnalysisService:
    def __init__(self, workers: Optional[int] = None):
        self.settings = get_settings()
        self.workers = workers if workers is not None else self.settings.workers

    def load(self, spec: str) -> Graph:
        """Build the graph named by a family spec."""
        g = build(parse_spec(spec))
        logger.info(f"Loaded {g.name or spec}")
        return g

    def base_point(self, g: Graph, text: Optional[str]) -> Vertex:
        if text is None:
            return 0 if isinstance(g, FiniteGraph) else g.base
        return parse_vertex_key(g, text)

    def level(self, g: Graph, max_level: Optional[int]) -> Optional[int]:
        """Lazy graphs fall back to the configured truncation level."""
        if isinstance(g, FiniteGraph) or max_level is not None:
            return max_level
        return self.settings.max_level

    def analyze(self, spec: str, base: Optional[str] = None, max_level: Optional[int] = None) -> AnalyzeReport:
        g = self.load(spec)
        v0 = self.base_point(g, base)
        t = convolution_table(g, v0, self.level(g, max_level), workers=self.workers)
        finite = isinstance(g, FiniteGraph)
        graph_metrics = None
        if finite:
            m = metrics(g)
            graph_metrics = MetricsReport(radius=m.radius, diameter=m.diameter, self_centered=m.self_centered)
        partition = list(t.level_sizes[: t.max_level + 1]) if not finite else list(t.level_sizes)
        table = table_report(t)
        return AnalyzeReport(
            base=table.base,
            max_level=table.max_level,
            exact=table.exact,
            rows=table.rows,
            graph=g.name or spec,
            finite=finite,
            metrics=graph_metrics,
            partition=partition,
        )

    def check(
        self,
        spec: str,
        base: Optional[str] = None,
        max_level: Optional[int] = None,
        all_basepoints: bool = False,
    ) -> VerdictReport:
        g = self.load(spec)
        name = g.name or spec
        if not all_basepoints:
            v0 = self.base_point(g, base)
            verdict = productivity(g, v0, self.level(g, max_level), workers=self.workers)
            return VerdictReport(
                graph=name,
                base=vertex_key(v0),
                productive=verdict.productive,
                scope=verdict.scope,
                finite=verdict.finite,
                failures=[failure_report(f) for f in verdict.failures],
            )

        if not isinstance(g, FiniteGraph):
            raise InvalidUsageError("--all-basepoints needs a finite graph")
        well_defined = check_well_defined(g)
        if not well_defined.well_defined:
            logger.warning(well_defined.detail)
            failure = Failure("well-definedness", (well_defined.witness,), detail=well_defined.detail)
            return VerdictReport(graph=name, productive=False, scope=0, finite=True, failures=[failure_report(failure)])

        classes = []
        failures: list[FailureReport] = []
        for cls in classify_base_points(g, self.workers).classes:
            verdict = verdict_for_table(cls.table, self.workers)
            classes.append(ClassReport(members=list(cls.members), productive=verdict.productive))
            if not failures:
                failures = [failure_report(f) for f in verdict.failures]
        return VerdictReport(
            graph=name,
            productive=all(c.productive for c in classes),
            scope=max(g.eccentricities),
            finite=True,
            failures=failures,
            classes=classes,
        )

    def drg(self, spec: str, base: Optional[str] = None, max_level: Optional[int] = None) -> SchemeReport:
        g = self.load(spec)
        v0 = self.base_point(g, base)
        verdict = check_distance_regular(g, self.level(g, max_level))
        report = SchemeReport(graph=g.name or spec, distance_regular=verdict.distance_regular, scope=verdict.scope)
        if not verdict.distance_regular:
            w = verdict.witness
            report.witness = RegularityWitnessReport(
                level=w.level,
                pairs=[[vertex_key(x) for x in w.first], [vertex_key(x) for x in w.second]],
                counts=[list(w.first_counts), list(w.second_counts)],
            )
            return report

        report.intersection_array = IntersectionArrayReport(b=list(verdict.array.b), c=list(verdict.array.c))
        try:
            scheme = intersection_numbers(g, v0, verdict.scope)
        except NotASchemeError as e:
            logger.warning(f"Intersection numbers are not constant: {e}")
            return report
        report.p = {f"{i},{j},{k}": value for (i, j, k), value in sorted(scheme.p.items())}
        identities = verify_scheme_identities(scheme)
        report.identities = dict(sorted(identities.checked.items()))
        report.identity_failures = [
            f"({f.identity}) at {f.indices}: {f.lhs} != {f.rhs}" for f in identities.failures
        ]
        if isinstance(g, FiniteGraph):
            report.srg = srg_parameters(g)
            if not check_well_defined(g).well_defined:
                return report
        crosscheck = drg_coefficient_crosscheck(g, v0, scheme.max_level)
        report.crosscheck = CrosscheckReport(
            holds=crosscheck.holds,
            checked=crosscheck.checked,
            bose_mesner=crosscheck.bose_mesner,
            normalized=crosscheck.normalized,
            linearization=crosscheck.linearization,
            failures=list(crosscheck.failures),
        )
        return report

    def mc(
        self,
        spec: str,
        i: int,
        j: int,
        base: Optional[str] = None,
        samples: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> McReport:
        g = self.load(spec)
        v0 = self.base_point(g, base)
        samples = self.settings.samples if samples is None else samples
        seed = self.settings.seed if seed is None else seed
        estimate = mc_estimate(g, v0, i, j, samples, seed, workers=self.workers)
        if isinstance(g, FiniteGraph):
            exact = convolution_table(g, v0).row(i, j)
        else:
            exact = convolution_table(g, v0, max(i, j)).row(i, j)
        z_scores = {
            str(k): (None if math.isinf(z) else round(z, 6)) for k, z in estimate.deviations(exact).items()
        }
        return McReport(
            graph=g.name or spec,
            base=vertex_key(v0),
            i=i,
            j=j,
            samples=samples,
            seed=seed,
            frequencies={str(k): f for k, f in estimate.frequencies.items()},
            exact={str(k): format_rational(q) for k, q in exact},
            z_scores=z_scores,
        )

    def search(self, config: SearchConfig) -> SearchReport:
        mode = "mixed" if config.mixed else "productive" if config.productive else "none"
        graphs = search_graphs(config.order, config.degree, workers=self.workers)
        hits = []
        for h in graphs:
            if mode == "none":
                hits.append(SearchHit(name=h.name, edges=h.edges()))
                continue
            productive = list(productive_pairs(h, self.workers))
            if mode == "productive" and len(productive) == h.order:
                hits.append(SearchHit(name=h.name, edges=h.edges(), productive_vertices=productive))
            elif mode == "mixed" and 0 < len(productive) < h.order:
                hits.append(SearchHit(name=h.name, edges=h.edges(), productive_vertices=productive))
        logger.info(f"Search {config.order},{config.degree} ({mode}): {len(hits)} of {len(graphs)} graphs")
        return SearchReport(order=config.order, degree=config.degree, filter=mode, graphs=hits)

    def format_text(self, report) -> str:
        """Plain-text rendering; rationals stay ``p/q``."""
        if isinstance(report, AnalyzeReport):
            return self._format_analyze(report)
        if isinstance(report, VerdictReport):
            return self._format_verdict(report)
        if isinstance(report, SchemeReport):
            return self._format_scheme(report)
        if isinstance(report, McReport):
            return self._format_mc(report)
        if isinstance(report, SearchReport):
            return self._format_search(report)
        raise TypeError(f"no text format for {type(report).__name__}")

    def _format_row(self, row: Row) -> str:
        return " + ".join(f"{q} R_{k}" for k, q in row)

    def _format_analyze(self, report: AnalyzeReport) -> str:
        lines = [f"Graph: {report.graph}", f"Base: {report.base}"]
        if report.metrics is not None:
            m = report.metrics
            lines.append(f"Radius: {m.radius}  Diameter: {m.diameter}  Self-centered: {m.self_centered}")
        else:
            lines.append(f"Truncated at level {report.max_level}")
        lines.append(f"Level sizes: {' '.join(map(str, report.partition))}")
        lines.append("Convolution table:")
        for key, row in report.rows.items():
            i, j = key.split(",")
            lines.append(f"  R_{i} ∘ R_{j} = {self._format_row(row)}")
        return "\n".join(lines)

    def _format_verdict(self, report: VerdictReport) -> str:
        status = "productive" if report.productive else "not productive"
        scope = f"levels <= {report.scope}" if report.finite else f"certified up to level {report.scope}"
        lines = [f"Graph: {report.graph}", f"Verdict: {status} ({scope})"]
        if report.base is not None:
            lines.insert(1, f"Base: {report.base}")
        for failure in report.failures:
            lines.append(f"Failed {failure.axiom} at {tuple(failure.witness)}")
            if failure.lhs is not None:
                lines.append(f"  left:  {self._format_row(failure.lhs)}")
                lines.append(f"  right: {self._format_row(failure.rhs)}")
            if failure.detail:
                lines.append(f"  {failure.detail}")
        if report.classes is not None:
            lines.append(f"Base-point classes: {len(report.classes)}")
            for index, cls in enumerate(report.classes):
                mark = "productive" if cls.productive else "not productive"
                lines.append(f"  class {index}: {mark}, vertices {' '.join(map(str, cls.members))}")
        return "\n".join(lines)

    def _format_scheme(self, report: SchemeReport) -> str:
        lines = [f"Graph: {report.graph}"]
        if not report.distance_regular:
            w = report.witness
            lines.append(f"Not distance-regular (checked up to distance {report.scope})")
            lines.append(
                f"  distance {w.level}: {tuple(w.pairs[0])} has (c,a,b) = {tuple(w.counts[0])}, "
                f"{tuple(w.pairs[1])} has {tuple(w.counts[1])}"
            )
            return "\n".join(lines)
        array = report.intersection_array
        lines.append(f"Distance-regular up to distance {report.scope}")
        lines.append(f"Intersection array: ({', '.join(map(str, array.b))}; {', '.join(map(str, array.c))})")
        if report.srg is not None:
            lines.append(f"Strongly regular parameters: {report.srg}")
        if report.identities is not None:
            total = sum(report.identities.values())
            state = "hold" if not report.identity_failures else f"{len(report.identity_failures)} failure(s)"
            lines.append(f"Scheme identities: {state} ({total} instances)")
            lines.extend(f"  {failure}" for failure in report.identity_failures)
        if report.crosscheck is not None:
            c = report.crosscheck
            lines.append(f"Coefficient cross-check: {'agrees' if c.holds else 'disagrees'} ({c.checked} coefficients)")
            if c.bose_mesner is not None:
                lines.append(
                    f"  Bose-Mesner: {c.bose_mesner}  normalized: {c.normalized}  linearization: {c.linearization}"
                )
        return "\n".join(lines)

    def _format_mc(self, report: McReport) -> str:
        lines = [
            f"Graph: {report.graph}",
            f"Base: {report.base}",
            f"R_{report.i} ∘ R_{report.j}: {report.samples} samples, seed {report.seed}",
            "  level  observed   exact   z",
        ]
        levels = sorted({int(k) for k in report.frequencies} | {int(k) for k in report.exact})
        for k in levels:
            freq = report.frequencies.get(str(k), 0.0)
            exact = report.exact.get(str(k), "0")
            z = report.z_scores.get(str(k))
            lines.append(f"  {k:>5}  {freq:.5f}  {exact:>6}  {'inf' if z is None else f'{z:+.2f}'}")
        return "\n".join(lines)

    def _format_search(self, report: SearchReport) -> str:
        lines = [f"{len(report.graphs)} graph(s) with order {report.order}, degree {report.degree} ({report.filter})"]
        for hit in report.graphs:
            edges = " ".join(f"{a}-{b}" for a, b in hit.edges)
            lines.append(f"  {hit.name}: {edges}")
            if report.filter == "mixed":
                lines.append(f"    productive base points: {' '.join(map(str, hit.productive_vertices))}")
        return "\n".join(lines)
