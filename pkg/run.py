"""
run.py
Command-line front end: load a category, build or read a surface, and run
one of the commands

    validate   category invariants, exit 1 when any fails
    sn-dim     dim SN_T and dim KSN of a surface
    verify     the verification suites (see gsn_constants.Suite)
    tube       tube-algebra dimension, block count and block dims per grade

Exit codes: 0 pass, 1 verification failure, 2 input error
Verbosity comes from the GSN_LOG environment variable
"""

import argparse
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import gsn_center
import gsn_fileio
import gsn_linalg as la
import gsn_report
import gsn_stringnet
import gsn_surface
from extras import CustomException, configure_logging, module_logger
from gsn_category import homogeneous_dimension, validate_category
from gsn_constants import ExitCode, Suite
from gsn_diagram import (DiagramEdge, DiagramVertex, PlanarDiagram, evaluate_closed,
                         three_point_key)

logger = module_logger(__name__)

COMMANDS = ("validate", "sn-dim", "verify", "tube")
THETA_ORDERINGS = 3  # randomised evaluation orders compared per theta graph
PTOLEMY_DEPTH = 4
CYCLE_DEPTH = 3
CYCLE_LENGTH = 8
GENUS2_MAX_ORDER = 2  # genus-2 propositions run on every label triple up to this grading order


@dataclass
class RunConfig:
    command: str
    category: str = "vec"
    surface: Optional[str] = None
    genus: int = 0
    boundaries: tuple = ()
    marked: Optional[int] = None
    labels: Optional[str] = None
    suites: tuple = Suite.ALL
    grade: Optional[str] = None
    out: Optional[str] = None
    jobs: int = 1
    seed: int = 0
    as_json: bool = False

    @property
    def builds_surface(self) -> bool:
        return self.surface is not None or self.genus > 0 or bool(self.boundaries) or self.marked is not None


def _names(text: str) -> tuple:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def parse_args(argv=None) -> RunConfig:
    parser = argparse.ArgumentParser(prog="run.py", description="G-equivariant string-net kernel")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--category", default="vec",
                        help="bundled category name or path of a category file")
    parser.add_argument("--surface", help="path of a surface file")
    parser.add_argument("--genus", type=int, default=0)
    parser.add_argument("--boundaries", type=_names, default=(),
                        help="comma separated boundary holonomies")
    parser.add_argument("--marked", type=int, help="extra marked points")
    parser.add_argument("--labels", help="path of a list of center labels, one per boundary circle")
    parser.add_argument("--suite", type=_names, default=None,
                        help=f"comma separated subset of {','.join(Suite.ALL)}")
    parser.add_argument("--grade", help="restrict tube to one grade")
    parser.add_argument("--out", help="write the JSON report here")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    args = parser.parse_args(argv)
    if args.surface and (args.genus or args.boundaries or args.marked is not None):
        parser.error("--surface excludes --genus/--boundaries/--marked")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    suites = Suite.ALL if args.suite is None else args.suite
    unknown = [s for s in suites if s not in Suite.ALL]
    if unknown:
        parser.error(f"unknown suite {', '.join(unknown)}")
    return RunConfig(args.command, args.category, args.surface, args.genus, tuple(args.boundaries),
                     args.marked, args.labels, tuple(suites), args.grade, args.out, args.jobs,
                     args.seed, args.json)


# -------------------------------------------------------------------------
# Inputs
# -------------------------------------------------------------------------


def default_marked(genus: int, boundaries: int) -> int:
    """
    The fewest extra marked points giving an ideal triangulation
    """
    if genus == 0 and boundaries == 0:
        return 2
    if genus == 0 and boundaries == 1:
        return 1
    return 0


def make_surface(config: RunConfig, group):
    if config.surface:
        return gsn_fileio.load_surface(config.surface, group)
    holonomies = [group.index(name) for name in config.boundaries]
    marked = config.marked
    if marked is None:
        marked = default_marked(config.genus, len(holonomies))
    return gsn_surface.build_surface(group, config.genus, holonomies, marked=marked)


def boundary_labels(config: RunConfig, cat, t) -> list:
    """
    Labels from --labels, else the unit on every circle (which needs
    trivial holonomies)
    """
    if config.labels:
        return gsn_fileio.load_labels(cat, config.labels)
    return [gsn_center.unit_object(cat) for _ in t.boundaries]


def default_surfaces(cat) -> list:
    group = cat.group
    e = group.identity
    surfaces = [gsn_surface.cylinder(group, e), gsn_surface.pants(group, e, e),
                gsn_surface.torus(group), gsn_surface.disk(group), gsn_surface.sphere(group)]
    if cat.rank == 1:
        surfaces.append(gsn_surface.build_surface(group, 2, []))
    return surfaces


# -------------------------------------------------------------------------
# Suites: each returns a list of cases, a case returns check records
# -------------------------------------------------------------------------


def category_cases(cat, config, rng) -> list:
    def invariants():
        violations = validate_category(cat)
        records = [gsn_stringnet.check_record(f"{v.name} at {list(v.indices)}", v.detail, "", False)
                   for v in violations]
        return records or [gsn_stringnet.check_record("category invariants", 0, 0, True)]

    def dimensions():
        neutral = cat.neutral_dimension
        out = []
        for g in cat.group.elements:
            value = homogeneous_dimension(cat, g)
            out.append(gsn_stringnet.check_record(f"D_{cat.group.names[g]} = D_e", value, neutral,
                                                  value == neutral))
        return out

    return [invariants, dimensions]


def _theta(a: int, b: int, c: int) -> PlanarDiagram:
    edges = [DiagramEdge(a), DiagramEdge(b), DiagramEdge(c)]
    top = DiagramVertex("coupling", [(0, "tail"), (1, "tail"), (2, "tail")])
    bottom = DiagramVertex("coupling", [(2, "head"), (1, "head"), (0, "head")])
    return PlanarDiagram([top, bottom], edges)


def diagram_cases(cat, config, rng) -> list:
    def loops():
        out = []
        for a in range(cat.rank):
            value = evaluate_closed(cat, PlanarDiagram([], [], [a]))
            out.append(gsn_stringnet.check_record(f"loop {cat.simple_name(a)}", value, cat.qdim(a),
                                                  value == cat.qdim(a)))
        return out

    def thetas():
        out = []
        seeds = [rng.randrange(2 ** 31) for _ in range(THETA_ORDERINGS)]
        for a in range(cat.rank):
            for b in range(cat.rank):
                for c in range(cat.rank):
                    if three_point_key(cat, a, b, c) is None:
                        continue
                    d = _theta(a, b, c)
                    reference = evaluate_closed(cat, d)
                    others = [evaluate_closed(cat, d, random.Random(s)) for s in seeds]
                    out.append(gsn_stringnet.check_record(
                        f"theta({a},{b},{c}) independent of evaluation order", reference, others,
                        all(x == reference for x in others)))
        return out

    return [loops, thetas]


def _surfaces(cat, config) -> list:
    if config.builds_surface:
        return [make_surface(config, cat.group)]
    return default_surfaces(cat)


def functor_cases(cat, config, rng) -> list:
    return [lambda t=t: gsn_stringnet.functor_checks(gsn_stringnet.SNSpace(cat, t))
            for t in _surfaces(cat, config)]


def idempotent_cases(cat, config, rng) -> list:
    group = cat.group
    simples = gsn_center.bundled_center(cat)
    neutral = [z for z in simples if z.grade == group.identity]

    def pi():
        return gsn_stringnet.projector_checks(gsn_stringnet.SNSpace(cat, gsn_surface.sphere(group)))

    def collars():
        t = gsn_surface.cylinder(group, group.identity)
        out = []
        for z in neutral:
            labels = [z, z.dual()]
            out.extend(gsn_stringnet.ksn_checks(gsn_stringnet.ksn_space(cat, t, labels), labels))
        return out

    def homs():
        return [gsn_stringnet.check_record(f"hom projector ({z.name}, {z.name}) idempotent", "P P", "P",
                                           la.is_idempotent(gsn_center.hom_projector(z, z)))
                for z in simples]

    def inductions():
        one = gsn_center.unit_object(cat)
        out = []
        for h in group.elements:
            ind = gsn_center.induction(one, h)
            out.append(gsn_stringnet.check_record(f"pi^{group.names[h]}_1 idempotent", "pi pi", "pi",
                                                  la.is_idempotent(ind.projector)))
        return out

    return [pi, collars, homs, inductions]


def tube_cases(cat, config, rng) -> list:
    group = cat.group

    def sector(g):
        algebra = gsn_center.tube_algebra(cat, g)
        name = group.names[g]
        return [gsn_stringnet.check_record(f"tube {name} associative", "(xy)z", "x(yz)",
                                           algebra.is_associative()),
                gsn_stringnet.check_record(f"tube {name} unital", "1x", "x", algebra.is_unital())]

    def bundled():
        records = gsn_center.check_bundled_center(cat)
        for z in gsn_center.bundled_center(cat):
            violations = gsn_center.validate_half_braiding(z)
            records.append(gsn_stringnet.check_record(f"half-braiding of {z.name}",
                                                      [v.name for v in violations], [], not violations))
        return records

    def torus():
        blocks = gsn_center.tube_algebra(cat, group.identity).block_count
        dim = gsn_stringnet.dim_ksn(cat, gsn_surface.torus(group))
        return [gsn_stringnet.check_record("dim KSN(torus) = tube blocks", dim, blocks, dim == blocks)]

    cases = [lambda g=g: sector(g) for g in group.elements] + [bundled]
    if group.order == 1:
        cases.append(torus)
    return cases


def proposition_cases(cat, config, rng) -> list:
    simples = gsn_center.bundled_center(cat)
    cases = [lambda: gsn_center.check_propositions(cat, ("cylinder",), simples),
             lambda: gsn_center.check_propositions(cat, ("pants",), simples)]
    if cat.group.order <= GENUS2_MAX_ORDER:
        cases.append(lambda: gsn_center.check_propositions(cat, ("genus2",), simples))
    return cases


def gluing_cases(cat, config, rng) -> list:
    group = cat.group
    e = group.identity
    simples = gsn_center.bundled_center(cat)
    neutral = [z for z in simples if z.grade == e]

    def cylinders():
        t = gsn_surface.cylinder(group, e)
        out = []
        for x in neutral:
            for y in neutral:
                record = gsn_stringnet.glue_dim_check(cat, (t, [x, y.dual()]), (t, [x, None]),
                                                      (t, [None, y.dual()]), simples)
                record["name"] = f"cylinder o cylinder ({x.name}, {y.name})"
                out.append(record)
        return out

    def pants():
        t = gsn_surface.pants(group, e, e)
        c = gsn_surface.cylinder(group, e)
        out = []
        for x1 in neutral:
            for x2 in neutral:
                for x3 in neutral:
                    record = gsn_stringnet.glue_dim_check(cat, (t, [x1, x2, x3.dual()]),
                                                          (t, [x1, x2, None]), (c, [None, x3.dual()]),
                                                          simples)
                    record["name"] = f"pants o cylinder ({x1.name}, {x2.name}, {x3.name})"
                    out.append(record)
        return out

    return [cylinders, pants]


def ptolemy_cases(cat, config, rng) -> list:
    group = cat.group

    def gauges():
        t = gsn_surface.torus(group)
        graph = gsn_surface.enumerate_reachable(t, PTOLEMY_DEPTH, flips=False)
        orbit = next(o for o in gsn_surface.fiber_labelings(t) if t.labels in o)
        return [gsn_stringnet.check_record("gauge orbit of the torus fibre", graph.size, len(orbit),
                                           graph.is_connected() and (graph.size == len(orbit)
                                                                     or not graph.complete))]

    def flips():
        t = gsn_surface.torus(group)
        graph = gsn_surface.enumerate_reachable(t, PTOLEMY_DEPTH, gauges=False)
        invalid = [n for n, node in enumerate(graph.nodes) if gsn_surface.validate_triangulation(node)]
        return [gsn_stringnet.check_record("flip graph of the torus", invalid, [],
                                           graph.is_connected() and not invalid)]

    def cycles():
        t = gsn_surface.torus(group)
        graph = gsn_surface.explore_complex(t, CYCLE_DEPTH)
        found = gsn_surface.move_cycles(graph, CYCLE_LENGTH)
        reduced = gsn_surface.reduce_cycles(graph, found)
        loose = [n for n, ok in enumerate(reduced) if not ok]
        return [gsn_stringnet.check_record("cycles of the torus move complex reduce to cells",
                                           len(loose), 0, bool(found) and not loose)]

    return [gauges, flips, cycles]


SUITES = {
    Suite.CATEGORY: category_cases,
    Suite.DIAGRAM: diagram_cases,
    Suite.FUNCTOR: functor_cases,
    Suite.IDEMPOTENT: idempotent_cases,
    Suite.TUBE: tube_cases,
    Suite.PROPOSITIONS: proposition_cases,
    Suite.GLUING: gluing_cases,
    Suite.PTOLEMY: ptolemy_cases,
}


def run_case(case) -> list:
    try:
        return case()
    except CustomException as error:
        logger.warning("case failed with %s", error)
        return [gsn_stringnet.check_record(getattr(case, "__name__", "case"), type(error).__name__,
                                           str(error), False)]


def run_cases(cases, jobs: int) -> list:
    """
    Results come back in submission order whatever the job count
    """
    if jobs == 1:
        results = [run_case(case) for case in cases]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_case, cases))
    return [record for records in results for record in records]


# -------------------------------------------------------------------------
# Commands
# -------------------------------------------------------------------------


def cmd_validate(config: RunConfig) -> tuple:
    cat = gsn_fileio.unchecked_category(config.category)
    violations = validate_category(cat)
    checks = [gsn_stringnet.check_record(v.name, list(v.indices), v.detail, False) for v in violations]
    report = gsn_report.build_report(cat.name, checks=checks, violations=violations,
                                     dims={"simples": cat.rank, "group_order": cat.group.order})
    return report, ExitCode.FAILURE if violations else ExitCode.PASS


def cmd_sn_dim(config: RunConfig) -> tuple:
    cat = gsn_fileio.open_category(config.category)
    t = make_surface(config, cat.group)
    labels = boundary_labels(config, cat, t)
    space = gsn_stringnet.ksn_space(cat, t, labels)
    dims = {"sn": space.dim, "ksn": gsn_stringnet.dim_ksn(cat, t, labels)}
    report = gsn_report.build_report(cat.name, gsn_fileio.surface_to_dict(t), dims,
                                     labels=[z.name for z in labels])
    return report, ExitCode.PASS


def cmd_verify(config: RunConfig) -> tuple:
    cat = gsn_fileio.open_category(config.category)
    rng = random.Random(config.seed)
    cases = []
    for name in config.suites:
        cases.extend(SUITES[name](cat, config, rng))
    checks = run_cases(cases, config.jobs)
    surface = gsn_fileio.surface_to_dict(make_surface(config, cat.group)) if config.builds_surface else None
    report = gsn_report.build_report(cat.name, surface, {"checks": len(checks)}, checks,
                                     suites=list(config.suites), seed=config.seed)
    return report, ExitCode.FAILURE if gsn_report.failures(report) else ExitCode.PASS


def cmd_tube(config: RunConfig) -> tuple:
    cat = gsn_fileio.open_category(config.category)
    sectors = gsn_center.sector_summary(cat)
    if config.grade is not None:
        wanted = cat.group.names[cat.group.index(config.grade)]
        sectors = [s for s in sectors if s["grade"] == wanted]
    dims = {f"blocks[{s['grade']}]": s["blocks"] for s in sectors}
    report = gsn_report.build_report(cat.name, dims=dims, sectors=sectors)
    return report, ExitCode.PASS


HANDLERS = {
    "validate": cmd_validate,
    "sn-dim": cmd_sn_dim,
    "verify": cmd_verify,
    "tube": cmd_tube,
}


def execute(config: RunConfig) -> tuple:
    """
    :return: (report or None, exit code)
    """
    try:
        return HANDLERS[config.command](config)
    except CustomException as error:
        logger.error("%s: %s", type(error).__name__, error)
    except OSError as error:
        logger.error("%s", error)
    return None, ExitCode.INPUT_ERROR


def main(argv=None) -> int:
    configure_logging()
    config = parse_args(argv)
    report, code = execute(config)
    if report is None:
        print("input error, see the log", file=sys.stderr)
        return code
    if config.out:
        gsn_fileio.save_text(config.out, gsn_report.dumps(report))
    print(gsn_report.dumps(report) if config.as_json else gsn_report.render_text(report), end="")
    return code


if __name__ == "__main__":
    sys.exit(main())
