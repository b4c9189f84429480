"""Command line interface: ``icl <group> <op> [flags]``.

Groups are ``poly``, ``ideal``, ``module`` and ``verify``; ideal ops and
``run`` may also be given without a group (``icl closure ...``).

Exit codes: 0 success / all PASS, 1 some FAIL, 2 INCONCLUSIVE and no
FAIL, 3 usage, input or IO error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from contextlib import ExitStack
from dataclasses import dataclass
from fractions import Fraction

from .bourbaki import (
    FModule,
    fitting_ideal,
    generic_bourbaki_ideal,
    is_contracted_module,
    is_integrally_closed_module,
    module_transform,
    nu_module,
    order_module,
)
from .cache import basis_store
from .groebner import (
    Ideal,
    colength_0dim,
    eliminate,
    ideal_combine,
    ideal_equal,
    ideal_intersect,
    ideal_quotient,
    krull_dim,
    saturate,
)
from .monomial import MonomialIdeal, is_monomial_closed, monomial_closure_power
from .poly import MonomialOrder, Ring, polynomial_gcd
from .problem import load_problem
from .rees import (
    DEFAULT_CAP,
    generic_element,
    is_integral_element,
    is_reduction,
    multiplicity_2d,
    rees_presentation,
)
from .rlr2 import (
    QuadraticChart,
    base_point_tree,
    base_points,
    contract_back,
    integral_closure_2d,
    is_contracted,
    is_contracted_direct,
    is_integrally_closed_2d,
    nu_local,
    order_local,
    quadratic_transform,
)
from .verify import (
    VerificationReport,
    run_campaign,
    verify_itoh,
    verify_product_closure,
    verify_radical,
    verify_specialization,
)

log = logging.getLogger("icl")

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3
DEFAULT_RING = "x,y/Q"


class UsageError(Exception):
    pass


@dataclass
class Context:
    ring: Ring
    seed: int = 0
    cap: int = DEFAULT_CAP
    degree_bound: int | None = None
    trace: bool = False


@dataclass
class Outcome:
    result: object
    text: str
    status: str = "ok"  # ok | PASS | FAIL | INCONCLUSIVE


# ---------------------------------------------------------------------------
# argument helpers

def _ideal_arg(ring: Ring, text) -> Ideal:
    if isinstance(text, Ideal):
        return text
    if isinstance(text, MonomialIdeal):
        return text.to_ideal()
    if isinstance(text, list):
        return Ideal(ring, [ring.parse(str(g)) for g in text])
    return Ideal.parse(ring, str(text))


def _monomial_arg(ring: Ring, text) -> MonomialIdeal:
    """``"2,0;0,2"``, ``[[2,0],[0,2]]`` or ``{"monomial_gens": .., "power": n}``."""
    if isinstance(text, MonomialIdeal):
        return text
    if isinstance(text, str):
        text = text.strip()
        if text.startswith(("[", "{")):
            text = json.loads(text)
        else:
            text = [[int(a) for a in part.split(",")] for part in text.split(";") if part.strip()]
    if isinstance(text, dict):
        text = text["monomial_gens"]
    return MonomialIdeal([tuple(v) for v in text], ring=ring)


def _module_arg(ring: Ring, text) -> FModule:
    if isinstance(text, FModule):
        return text
    cols = json.loads(text) if isinstance(text, str) else text
    if not isinstance(cols, list) or not all(isinstance(c, list) for c in cols):
        raise UsageError("a module is a JSON list of columns, each a list of polynomial strings")
    return FModule.parse(ring, [[str(s) for s in c] for c in cols])


def _chart_arg(ring: Ring, text: str) -> QuadraticChart:
    """``x``, ``y`` or ``pivot:c``; an optional ``@p`` moves to the point ``t = p``."""
    text = str(text or "x").strip()
    where, _, at = text.partition("@")
    if where == "x":
        chart = QuadraticChart.x_chart(ring)
    elif where == "y":
        chart = QuadraticChart.y_chart(ring)
    elif where.startswith("pivot:"):
        chart = QuadraticChart.pivot_chart(ring, Fraction(where[6:]))
    else:
        raise UsageError(f"unknown chart {text!r}; use x, y or pivot:c")
    if at:
        chart = chart.translated(Fraction(at))
    return chart


def _ints(text) -> list[int]:
    if isinstance(text, list):
        return [int(a) for a in text]
    return [int(a) for a in str(text).split(",") if a.strip()]


def _need(args: dict, key: str):
    v = args.get(key)
    if v is None:
        raise UsageError(f"missing --{key.replace('_', '-')}")
    return v


def _gens(I: Ideal) -> list[str]:
    return I.to_strings()


def _ideal_outcome(I: Ideal, **extra) -> Outcome:
    g = _gens(I)
    return Outcome({"generators": g, "ring": str(I.ring), **extra}, ", ".join(g) if g else "(0)")


def _bool_outcome(v: bool, **extra) -> Outcome:
    return Outcome({"value": bool(v), **extra}, "true" if v else "false")


def _report_outcome(rep: VerificationReport) -> Outcome:
    lines = [f"{rep.check}: {rep.verdict}"]
    if rep.witness:
        lines.append("witness: " + json.dumps(rep.witness, sort_keys=True))
    lines += [f"note: {n}" for n in rep.notes]
    return Outcome(rep.to_dict(), "\n".join(lines), rep.verdict)


# ---------------------------------------------------------------------------
# poly

def poly_normalize(ctx, target, args):
    f = ctx.ring.parse(_need(args, "f"))
    return Outcome({"polynomial": str(f)}, str(f))


def poly_gcd(ctx, target, args):
    fs = [ctx.ring.parse(s) for s in _need(args, "f_list")]
    g = polynomial_gcd(fs)
    return Outcome({"gcd": str(g)}, str(g))


def poly_derivative(ctx, target, args):
    f = ctx.ring.parse(_need(args, "f"))
    d = f.derivative(_need(args, "var"))
    return Outcome({"derivative": str(d)}, str(d))


def poly_nf(ctx, target, args):
    f = ctx.ring.parse(_need(args, "f"))
    r = target.normal_form(f)
    return Outcome({"normal_form": str(r)}, str(r))


# ---------------------------------------------------------------------------
# ideal

def _order_of(args) -> MonomialOrder | None:
    o = args.get("order")
    return MonomialOrder.parse(o) if o else None


def ideal_gb(ctx, target, args):
    order = _order_of(args)
    gb = target.groebner(order)
    g = [str(p) for p in gb]
    return Outcome({"basis": g, "order": str(order or target.ring.order)}, "\n".join(g) if g else "0")


def ideal_member(ctx, target, args):
    return _bool_outcome(target.contains(ctx.ring.parse(_need(args, "f"))))


def ideal_equal_op(ctx, target, args):
    return _bool_outcome(ideal_equal(target, _ideal_arg(ctx.ring, _need(args, "other"))))


def _binary(fn):
    def op(ctx, target, args):
        return _ideal_outcome(fn(target, _ideal_arg(ctx.ring, _need(args, "other"))))

    return op


def ideal_power(ctx, target, args):
    return _ideal_outcome(ideal_combine(target, None, ("power", int(_need(args, "n")))))


def ideal_eliminate(ctx, target, args):
    drop = [v.strip() for v in str(_need(args, "vars")).split(",") if v.strip()]
    return _ideal_outcome(eliminate(target, drop))


def ideal_dim(ctx, target, args):
    d = krull_dim(target)
    return Outcome({"dim": d}, str(d))


def ideal_colength(ctx, target, args):
    n = colength_0dim(target)
    return Outcome({"colength": n}, str(n))


def _trace_tree(ctx, I: Ideal, extra: dict):
    if ctx.trace and I.ring.nvars == 2:
        extra["tree"] = base_point_tree(I, seed=ctx.seed).to_dict()


def _json_power(args):
    m = args.get("monomial")
    if isinstance(m, str) and m.strip().startswith("{"):
        m = json.loads(m)
    return m.get("power") if isinstance(m, dict) else None


def ideal_closure(ctx, target, args):
    power = int(args.get("power") or _json_power(args) or 1)
    if isinstance(target, MonomialIdeal) or (power != 1) or (target.is_monomial() and target.ring.nvars != 2):
        M = target if isinstance(target, MonomialIdeal) else MonomialIdeal.from_ideal(target)
        res = monomial_closure_power(M, power)
        return _ideal_outcome(res.to_ideal(), method="newton-polyhedron", power=power)
    extra = {"method": "quadratic-transforms"}
    _trace_tree(ctx, target, extra)
    return _ideal_outcome(integral_closure_2d(target), **extra)


def ideal_is_closed(ctx, target, args):
    if isinstance(target, MonomialIdeal):
        return _bool_outcome(is_monomial_closed(target), method="newton-polyhedron")
    if target.ring.nvars != 2 and target.is_monomial():
        return _bool_outcome(is_monomial_closed(MonomialIdeal.from_ideal(target)), method="newton-polyhedron")
    extra = {"method": "quadratic-transforms"}
    _trace_tree(ctx, target, extra)
    return _bool_outcome(is_integrally_closed_2d(target), **extra)


def ideal_order(ctx, target, args):
    o = order_local(target)
    return Outcome({"order": o}, str(o))


def ideal_nu(ctx, target, args):
    n = nu_local(target)
    return Outcome({"nu": n}, str(n))


def ideal_contracted(ctx, target, args):
    v = is_contracted(target)
    out = _bool_outcome(v, method="numeric")
    if args.get("direct"):
        d = is_contracted_direct(target, seed=ctx.seed)
        out.result["direct"] = d
        out.result["seed"] = ctx.seed
        out.text += f" (direct: {'true' if d else 'false'})"
    return out


def ideal_transform(ctx, target, args):
    chart = _chart_arg(ctx.ring, args.get("chart"))
    T = quadratic_transform(target, chart)
    return _ideal_outcome(T, chart=chart.to_dict())


def ideal_contract_back(ctx, target, args):
    chart = _chart_arg(ctx.ring, args.get("chart"))
    J = _ideal_arg(chart.target, _need(args, "other"))
    return _ideal_outcome(contract_back(J, chart), chart=chart.to_dict())


def ideal_base_points(ctx, target, args):
    pts = [bp.to_dict() for bp in base_points(target)]
    text = "\n".join(f"{p['chart']}-chart t={p['point']}: {', '.join(p['ideal'])}" for p in pts) or "none"
    return Outcome({"base_points": pts}, text)


def ideal_tree(ctx, target, args):
    t = base_point_tree(target, seed=ctx.seed).to_dict()
    return Outcome({"tree": t, "seed": ctx.seed}, json.dumps(t, sort_keys=True, indent=2))


def ideal_rees(ctx, target, args):
    K = rees_presentation(target)
    g = _gens(K)
    return Outcome({"relations": g, "ring": str(K.ring)}, "\n".join(g) if g else "(no relations)")


def ideal_reduction(ctx, target, args):
    U = _ideal_arg(ctx.ring, _need(args, "sub"))
    r = is_reduction(U, target, ctx.cap)
    if r:
        return Outcome({"reduction": True, "n": r.n, "cap": ctx.cap}, f"true (reduction number {r.n})")
    return Outcome({"reduction": False, "cap": ctx.cap}, f"no certificate up to {ctx.cap}", "INCONCLUSIVE")


def ideal_integral_test(ctx, target, args):
    f = ctx.ring.parse(_need(args, "f"))
    r = is_integral_element(f, target, ctx.cap)
    if r:
        return Outcome({"integral": True, "n": r.n, "cap": ctx.cap}, f"integral (degree {r.n + 1})")
    return Outcome({"integral": None, "cap": ctx.cap}, f"no certificate up to {ctx.cap}", "INCONCLUSIVE")


def ideal_multiplicity(ctx, target, args):
    e = multiplicity_2d(target, seed=ctx.seed)
    return Outcome({"multiplicity": e, "seed": ctx.seed}, str(e))


def ideal_generic(ctx, target, args):
    g = generic_element(target, args.get("mode") or "random", ctx.seed)
    return Outcome(g.to_dict(), str(g.element))


# ---------------------------------------------------------------------------
# module

def module_fitting(ctx, target, args):
    return _ideal_outcome(fitting_ideal(target, int(args.get("i") or 0)))


def module_order(ctx, target, args):
    o = order_module(target)
    return Outcome({"order": o}, str(o))


def module_nu(ctx, target, args):
    n = nu_module(target)
    return Outcome({"nu": n}, str(n))


def module_contracted(ctx, target, args):
    return _bool_outcome(is_contracted_module(target))


def module_bourbaki(ctx, target, args):
    res = generic_bourbaki_ideal(target, mode=args.get("mode") or "random", seed=ctx.seed,
                                 path=args.get("path") or "iterated")
    d = res.to_dict()
    return Outcome(d, ", ".join(d["ideal"]))


def module_is_closed(ctx, target, args):
    return _bool_outcome(is_integrally_closed_module(target, seed=ctx.seed), seed=ctx.seed)


def module_transform_op(ctx, target, args):
    chart = _chart_arg(ctx.ring, args.get("chart"))
    M = module_transform(target, chart)
    cols = M.to_strings()
    return Outcome({"columns": cols, "ring": str(M.ring), "chart": chart.to_dict()}, json.dumps(cols))


# ---------------------------------------------------------------------------
# verify

def verify_itoh_op(ctx, target, args):
    return _report_outcome(verify_itoh(_ints(_need(args, "exponents")), int(_need(args, "nmax"))))


def verify_specialize_op(ctx, target, args):
    seeds = _ints(args["seeds"]) if args.get("seeds") else [ctx.seed, ctx.seed + 1]
    return _report_outcome(verify_specialization(target, seeds, ctx.cap, ctx.degree_bound))


def verify_radical_op(ctx, target, args):
    values = _ints(args["values"]) if args.get("values") else None
    return _report_outcome(verify_radical(target, ctx.seed, values, ctx.cap))


def verify_product_op(ctx, target, args):
    return _report_outcome(verify_product_closure(int(args.get("count") or 50), ctx.seed))


def verify_campaign_op(ctx, target, args):
    with open(_need(args, "file"), encoding="utf-8") as fh:
        instances = json.load(fh)
    if not isinstance(instances, list):
        raise UsageError("a campaign file is a JSON list of instances")
    reports = run_campaign(instances, int(args.get("workers") or 1))
    status = _worst([r.verdict for r in reports])
    text = "\n".join(f"{r.check} {json.dumps(r.instance, sort_keys=True)}: {r.verdict}" for r in reports)
    return Outcome({"reports": [r.to_dict() for r in reports]}, text, status)


# ---------------------------------------------------------------------------
# dispatch tables: op -> (handler, target kind)

IDEAL_OPS = {
    "gb": (ideal_gb, "ideal"),
    "member": (ideal_member, "ideal"),
    "equal": (ideal_equal_op, "ideal"),
    "sum": (_binary(lambda I, J: ideal_combine(I, J, "sum")), "ideal"),
    "product": (_binary(lambda I, J: ideal_combine(I, J, "product")), "ideal"),
    "intersect": (_binary(ideal_intersect), "ideal"),
    "quotient": (_binary(ideal_quotient), "ideal"),
    "saturate": (_binary(saturate), "ideal"),
    "power": (ideal_power, "ideal"),
    "eliminate": (ideal_eliminate, "ideal"),
    "dim": (ideal_dim, "ideal"),
    "colength": (ideal_colength, "ideal"),
    "closure": (ideal_closure, "ideal-or-monomial"),
    "is-closed": (ideal_is_closed, "ideal-or-monomial"),
    "order": (ideal_order, "ideal"),
    "nu": (ideal_nu, "ideal"),
    "contracted": (ideal_contracted, "ideal"),
    "transform": (ideal_transform, "ideal"),
    "contract-back": (ideal_contract_back, None),
    "base-points": (ideal_base_points, "ideal"),
    "tree": (ideal_tree, "ideal"),
    "rees": (ideal_rees, "ideal"),
    "reduction": (ideal_reduction, "ideal"),
    "integral-test": (ideal_integral_test, "ideal"),
    "multiplicity": (ideal_multiplicity, "ideal"),
    "generic": (ideal_generic, "ideal"),
}
POLY_OPS = {
    "normalize": (poly_normalize, None),
    "gcd": (poly_gcd, None),
    "derivative": (poly_derivative, None),
    "nf": (poly_nf, "ideal"),
}
MODULE_OPS = {
    "fitting": (module_fitting, "module"),
    "order": (module_order, "module"),
    "nu": (module_nu, "module"),
    "contracted": (module_contracted, "module"),
    "bourbaki": (module_bourbaki, "module"),
    "is-closed": (module_is_closed, "module"),
    "transform": (module_transform_op, "module"),
}
VERIFY_OPS = {
    "itoh": (verify_itoh_op, None),
    "specialize": (verify_specialize_op, "ideal"),
    "radical": (verify_radical_op, "ideal"),
    "product": (verify_product_op, None),
    "campaign": (verify_campaign_op, None),
}
GROUPS = {"poly": POLY_OPS, "ideal": IDEAL_OPS, "module": MODULE_OPS, "verify": VERIFY_OPS}

# op-specific flags: name -> help
OP_FLAGS = {
    "f": "polynomial",
    "other": "second ideal, comma separated generators",
    "order": "monomial order (lex, grevlex, block:k)",
    "n": "exponent",
    "vars": "comma separated variables to eliminate",
    "power": "closure of the n-th power (monomial ideals)",
    "chart": "x, y or pivot:c, optionally @p to move to t = p",
    "sub": "candidate reduction, comma separated generators",
    "mode": "random or symbolic",
    "direct": None,
    "var": "variable",
    "i": "Fitting index",
    "path": "iterated, minors or fitting",
    "exponents": "comma separated exponents a_1,..,a_g",
    "nmax": "largest n",
    "seeds": "comma separated seeds",
    "values": "comma separated specialization values",
    "count": "number of random pairs",
    "file": "JSON input file",
    "workers": "worker processes",
}


def _worst(statuses) -> str:
    if "FAIL" in statuses:
        return "FAIL"
    if "INCONCLUSIVE" in statuses:
        return "INCONCLUSIVE"
    return "ok"


def _exit_code(status: str) -> int:
    return {"FAIL": EXIT_FAIL, "INCONCLUSIVE": EXIT_INCONCLUSIVE}.get(status, EXIT_OK)


def _resolve_target(kind, ring: Ring, args: dict):
    if kind is None:
        return None
    if kind == "module":
        return _module_arg(ring, _need(args, "module"))
    if kind == "ideal-or-monomial" and args.get("monomial") is not None:
        return _monomial_arg(ring, args["monomial"])
    if args.get("ideal") is None and args.get("monomial") is not None:
        return _monomial_arg(ring, args["monomial"]).to_ideal()
    return _ideal_arg(ring, _need(args, "ideal"))


def run_op(group: str, op: str, ctx: Context, args: dict, target=None) -> Outcome:
    table = GROUPS[group]
    if op not in table:
        raise UsageError(f"unknown {group} op {op!r}")
    handler, kind = table[op]
    if target is None:
        target = _resolve_target(kind, ctx.ring, args)
    elif kind == "ideal" and isinstance(target, MonomialIdeal):
        target = target.to_ideal()
    log.debug("running %s %s", group, op)
    return handler(ctx, target, args)


def run_problem_file(path: str, ctx: Context) -> Outcome:
    prob = load_problem(path)
    results = []
    statuses = []
    lines = []
    for i, task in enumerate(prob.tasks):
        group, _, op = task.op.rpartition(" ")
        group = group or ("module" if isinstance(prob.objects[task.target], FModule) else "ideal")
        if group not in GROUPS:
            raise UsageError(f"task {i}: unknown group {group!r}")
        tctx = Context(prob.ring, (task.seeds or [ctx.seed])[0], task.caps.get("cap", ctx.cap),
                       task.caps.get("degree_bound", ctx.degree_bound), ctx.trace)
        args = dict(task.args)
        if task.seeds and "seeds" not in args:
            args["seeds"] = task.seeds
        other = args.get("other")
        if isinstance(other, str) and other in prob.objects:
            args["other"] = prob.objects[other]
        out = run_op(group, op, tctx, args, prob.objects[task.target])
        results.append({"op": f"{group} {op}", "target": task.target, "result": out.result, "status": out.status})
        statuses.append(out.status)
        lines.append(f"[{i}] {group} {op} {task.target}: {out.text}")
    return Outcome({"tasks": results, "ring": str(prob.ring)}, "\n".join(lines), _worst(statuses))


# ---------------------------------------------------------------------------
# argparse

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_globals(p: argparse.ArgumentParser, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--ring", default=d if suppress else DEFAULT_RING, help='ring, e.g. "x,y/Q" or "x,y,z/Fp:65537"')
    p.add_argument("--json", action="store_true", default=d if suppress else False, help="JSON output")
    p.add_argument("--seed", type=int, default=d if suppress else 0)
    p.add_argument("--cap", type=int, default=d if suppress else DEFAULT_CAP, help="reduction search cap")
    p.add_argument("--degree-bound", type=int, default=d, help="candidate degree bound for verify specialize")
    p.add_argument("--trace", action="store_true", default=d if suppress else False,
                   help="debug logging; closures also report the base point tree")
    p.add_argument("--cache", metavar="DIR", default=d, help="persistent Groebner basis cache")


def _add_op_flags(p: argparse.ArgumentParser, group: str, op: str, kind):
    if kind in ("ideal", "ideal-or-monomial") or (group == "ideal" and op == "contract-back"):
        p.add_argument("--ideal", help="comma separated generators")
        p.add_argument("--monomial", help='exponent vectors, e.g. "2,0;0,2" or JSON')
    if kind == "module":
        p.add_argument("--module", help="JSON list of columns (generators) of polynomial strings")
    for name, help_ in OP_FLAGS.items():
        flag = "--" + name.replace("_", "-")
        if name == "direct":
            p.add_argument(flag, action="store_true", help="also run the direct contraction check")
        elif name == "f" and group == "poly" and op == "gcd":
            p.add_argument("--f", dest="f_list", nargs="+", help="polynomials")
        else:
            p.add_argument(flag, help=help_)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="icl", description="Integral closure toolkit")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="group", metavar="GROUP")
    for group, table in GROUPS.items():
        gp = sub.add_parser(group, help=f"{group} operations")
        gsub = gp.add_subparsers(dest="op", metavar="OP")
        for op, (_, kind) in table.items():
            op_p = gsub.add_parser(op)
            _add_globals(op_p, suppress=True)
            _add_op_flags(op_p, group, op, kind)
    rp = sub.add_parser("run", help="run a problem file")
    _add_globals(rp, suppress=True)
    rp.add_argument("file")
    return parser


def _normalize_argv(argv: list[str]) -> list[str]:
    """Insert ``ideal`` in front of a bare ideal op."""
    takes_value = {"--ring", "--seed", "--cap", "--degree-bound", "--cache"}
    i = 0
    while i < len(argv):
        a = argv[i]
        if a.startswith("-"):
            i += 2 if a in takes_value else 1
            continue
        if a not in GROUPS and a != "run" and a in IDEAL_OPS:
            return argv[:i] + ["ideal"] + argv[i:]
        return argv
    return argv


def _emit(out: Outcome, as_json: bool, command: str, ctx: Context):
    if as_json:
        doc = {"command": command, "ring": str(ctx.ring), "seed": ctx.seed, "status": out.status,
               "result": out.result}
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        sys.stdout.write(out.text + "\n")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(_normalize_argv(argv))
        if ns.group is None or (ns.group != "run" and getattr(ns, "op", None) is None):
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        if ns.trace:
            logging.basicConfig(level=logging.DEBUG, stream=sys.stderr, format="%(name)s: %(message)s")
        ctx = Context(Ring.from_text(ns.ring), ns.seed, ns.cap, ns.degree_bound, ns.trace)
        with ExitStack() as stack:
            if ns.cache:
                stack.enter_context(basis_store(ns.cache))
            if ns.group == "run":
                out = run_problem_file(ns.file, ctx)
                command = "run"
            else:
                args = {k: v for k, v in vars(ns).items() if v is not None}
                out = run_op(ns.group, ns.op, ctx, args)
                command = f"{ns.group} {ns.op}"
        _emit(out, ns.json, command, ctx)
        return _exit_code(out.status)
    except Exception as exc:  # every failure maps to exit 3 with a one-line diagnostic
        if logging.getLogger().isEnabledFor(logging.DEBUG):
            log.exception("failed")
        msg = str(exc) or type(exc).__name__
        sys.stderr.write(f"icl: error: {type(exc).__name__}: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
