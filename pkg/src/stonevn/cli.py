"""Command-line front end.

Every verb reads JSON instance files (``-`` means stdin) and writes one
canonical JSON document, or a plain table with ``--format pretty``.
Exit status: 0 success, 1 verification failure, 2 usage or input error.
"""

import argparse
import sys

from . import boolalg, boolspace, duality, serialize, smooth, vnring
from .errors import ContractError, DomainError, ParseError, ResourceError
from .exact import RR
from .report import Report
from .verify import CRITERIA, Bounds, full_pipeline_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Result:
    """A JSON-ready payload plus the verdict that decides the exit status."""

    def __init__(self, payload, passed=True, summary=None):
        self.payload = payload
        self.passed = passed
        self.summary = summary


def _read(path, stdin_used):
    if path == "-":
        if stdin_used[0]:
            raise ParseError("stdin can only be read once")
        stdin_used[0] = True
        return serialize.loads(sys.stdin.read(), "<stdin>")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return serialize.loads(text, path)


class _Inputs:
    def __init__(self, args):
        self.args = args
        self._stdin = [False]
        self._cache = {}

    def raw(self, flag):
        path = getattr(self.args, flag, None)
        if path is None:
            raise ContractError(f"--{flag.replace('_', '-')} is required for this command")
        if flag not in self._cache:
            self._cache[flag] = _read(path, self._stdin)
        return self._cache[flag]

    def has(self, flag):
        return getattr(self.args, flag, None) is not None

    def ring(self):
        A = serialize.ring_from_json(self.raw("ring"))
        _bound(len(A), self.args.max_points)
        return A

    def element(self, A, flag="element"):
        return serialize.element_from_json(self.raw(flag), A)

    def space(self, flag="space"):
        X = serialize.space_from_json(self.raw(flag))
        _bound(len(X), self.args.max_points)
        return X

    def algebra(self, flag="algebra"):
        B = serialize.ba_from_json(self.raw(flag))
        _bound(len(B.atoms), self.args.max_points)
        return B


def _bound(n, max_points):
    if n > max_points:
        raise ResourceError(f"size {n} exceeds --max-points {max_points}")


def _report(rep):
    return _Result(rep.to_dict(), rep.passed, rep.summary())


# --- von Neumann regular rings -------------------------------------------------------

def cmd_quasi_inverse(inp):
    A = inp.ring()
    return _Result(serialize.element_to_json(vnring.quasi_inverse(inp.element(A))))


def cmd_idempotent_of(inp):
    A = inp.ring()
    return _Result(serialize.element_to_json(vnring.idempotent_of(inp.element(A))))


def cmd_idempotents(inp):
    A = inp.ring()
    ids = vnring.idempotents(A, inp.args.max_points)
    return _Result({"idempotents": [serialize.element_to_json(e)["coords"] for e in ids]})


def cmd_localize(inp):
    A = inp.ring()
    a = inp.element(A)
    B, f = vnring.localize_at_element(A, a)
    image = vnring.apply_hom(f, a)
    return _Result({
        "ring": serialize.ring_to_json(B),
        "hom": serialize.hom_to_json(f),
        "image": serialize.element_to_json(image)["coords"],
        "image_invertible": image.is_unit(),
        "kernel": serialize.element_to_json(vnring.hom_kernel_generator(f))["coords"],
    })


def cmd_spec(inp):
    A = inp.ring()
    return _Result(serialize.space_to_json(vnring.spec(A, inp.args.max_points)))


def cmd_d_inf(inp):
    A = inp.ring()
    opened = vnring.d_infinity(inp.element(A))
    return _Result({"points": [p for p in A.points if p in opened]})


def cmd_residue_check(inp):
    A = inp.ring()
    ps = vnring.primes(A)
    if inp.args.point is not None:
        ps = [p for p in ps if p.name == inp.args.point]
        if not ps:
            raise ContractError(f"no point named {inp.args.point!r}")
    rep = Report("residue fields")
    for p in ps:
        rep.merge(vnring.residue_field_check(A, p, seed=f"{inp.args.seed}:{p.name}"))
    return _report(rep.finish())


# --- Boolean algebras and spaces -------------------------------------------------------

def cmd_ba_ops(inp):
    B = inp.algebra()
    x = serialize.ba_element_from_json(inp.raw("x"), B)
    out = {"complement": list((~x).subset)}
    if inp.has("y"):
        y = serialize.ba_element_from_json(inp.raw("y"), B)
        out["meet"] = list((x & y).subset)
        out["join"] = list((x | y).subset)
        out["leq"] = x <= y
    return _Result(out)


def cmd_stone(inp):
    B = inp.algebra()
    return _Result(serialize.space_to_json(boolalg.stone(B, max_atoms=inp.args.max_points)))


def cmd_clopen(inp):
    return _Result(serialize.ba_to_json(boolalg.clopen(inp.space())))


def cmd_j(inp):
    A = inp.ring()
    j = boolalg.JIso(A)
    rep = j.verify()
    table = [{"idempotent": serialize.element_to_json(e)["coords"], "clopen": list(j(e).subset)}
             for e in j.source.idempotents()]
    return _Result({"table": table, "report": rep.to_dict()}, rep.passed, rep.summary())


def cmd_quotient(inp):
    X = inp.space()
    R = serialize.partition_from_json(inp.raw("partition"), X)
    Q, proj = boolspace.quotient(X, R)
    return _Result({"space": serialize.space_to_json(Q), "map": proj.as_dict()})


def cmd_limit(inp):
    S = serialize.system_from_json(inp.raw("system"))
    lim = boolspace.limit(S)
    threads = {lim.space.points[k]: [S.levels[i].points[c] for i, c in enumerate(t.choices)]
               for k, t in enumerate(lim.threads)}
    return _Result({"space": serialize.space_to_json(lim.space), "threads": threads})


def cmd_delta(inp):
    X = inp.space()
    d = boolspace.delta(X, seed=inp.args.seed, max_points=inp.args.max_points)
    out = {"map": d.map.as_dict(), "bijective": d.bijective,
           "levels": len(d.presentation.relations), "limit_points": len(d.limit.space)}
    summary = f"delta on {len(X)} points: {'bijective' if d.bijective else 'NOT bijective'}"
    return _Result(out, d.bijective, summary)


def cmd_delta_map(inp):
    X, Y = inp.space(), inp.space("codomain")
    f = serialize.map_from_json(inp.raw("map"), X, Y)
    return _Result({"map": boolspace.delta_functor(f).as_dict()})


def cmd_khat(inp):
    X = inp.space()
    if not inp.has("map"):
        return _Result(serialize.ring_to_json(duality.khat(X)))
    Y = inp.space("codomain")
    f = duality.khat_of_map(serialize.map_from_json(inp.raw("map"), X, Y))
    return _Result({"domain": serialize.ring_to_json(f.domain),
                    "codomain": serialize.ring_to_json(f.codomain),
                    "hom": serialize.hom_to_json(f)})


def cmd_kcheck(inp):
    B = inp.algebra()
    if not inp.has("hom"):
        return _Result(serialize.ring_to_json(duality.kcheck(B)))
    C = inp.algebra("codomain")
    f = duality.kcheck_of_hom(serialize.ba_hom_from_json(inp.raw("hom"), B, C))
    return _Result({"domain": serialize.ring_to_json(f.domain),
                    "codomain": serialize.ring_to_json(f.codomain),
                    "hom": serialize.hom_to_json(f)})


def cmd_epsilon(inp):
    X = inp.space()
    return _report(duality.epsilon(X, max_points=inp.args.max_points))


def cmd_theta(inp):
    B = inp.algebra()
    return _report(duality.theta(B, max_atoms=inp.args.max_points, seed=inp.args.seed))


# --- suites ------------------------------------------------------------------------------

def _criteria_list(text):
    try:
        keys = sorted({int(k) for k in text.split(",") if k.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad criterion list {text!r}") from None
    bad = [k for k in keys if k not in CRITERIA]
    if bad or not keys:
        raise argparse.ArgumentTypeError(f"criteria must be among 1..{len(CRITERIA)}")
    return keys


def cmd_verify(inp):
    args = inp.args
    bounds = Bounds().quick() if args.quick else Bounds()
    result = full_pipeline_verify(args.seed, bounds, only=args.only, tolerance=args.tolerance)
    return _Result(result.to_dict(), result.passed, result.summary())


def cmd_check_smooth_axioms(inp):
    args = inp.args
    A = vnring.ProductRing.power(args.points, RR)
    heads = ()
    if args.expr is not None:
        heads = (smooth.parse(args.expr),)
    rep = Report("smooth axioms")
    rep.merge(vnring.check_projection_axiom(A, args.samples, seed=f"{args.seed}:p"))
    rep.merge(vnring.check_composition_axiom(A, args.samples, seed=f"{args.seed}:c",
                                             tolerance=args.tolerance, heads=heads))
    return _report(rep.finish())


COMMANDS = {
    "quasi-inverse": (cmd_quasi_inverse, ["ring", "element"], "quasi-inverse of an element"),
    "idempotent-of": (cmd_idempotent_of, ["ring", "element"], "idempotent generating (a)"),
    "idempotents": (cmd_idempotents, ["ring"], "all idempotents"),
    "localize": (cmd_localize, ["ring", "element"], "localization at an element"),
    "spec": (cmd_spec, ["ring"], "prime spectrum"),
    "d-inf": (cmd_d_inf, ["ring", "element"], "basic open set D(a)"),
    "residue-check": (cmd_residue_check, ["ring"], "residue fields at primes"),
    "ba-ops": (cmd_ba_ops, ["algebra", "x", "y"], "meet, join and complement"),
    "stone": (cmd_stone, ["algebra"], "Stone space of a Boolean algebra"),
    "clopen": (cmd_clopen, ["space"], "clopen algebra of a space"),
    "j": (cmd_j, ["ring"], "idempotents to clopens of Spec, verified"),
    "quotient": (cmd_quotient, ["space", "partition"], "quotient space and projection"),
    "limit": (cmd_limit, ["system"], "inverse limit of a finite system"),
    "delta": (cmd_delta, ["space"], "profinite presentation map"),
    "delta-map": (cmd_delta_map, ["space", "codomain", "map"], "induced map of limits"),
    "khat": (cmd_khat, ["space", "codomain", "map"], "function ring of a space or map"),
    "kcheck": (cmd_kcheck, ["algebra", "codomain", "hom"], "ring of a Boolean algebra or hom"),
    "epsilon": (cmd_epsilon, ["space"], "verify the unit X -> Spec k(X)"),
    "theta": (cmd_theta, ["algebra"], "verify B -> idempotents of K(B)"),
    "verify": (cmd_verify, [], "run the acceptance suites"),
    "check-smooth-axioms": (cmd_check_smooth_axioms, [], "projection and composition axioms"),
}


def _seed(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _tolerance(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}") from None
    if not v >= 0 or v == float("inf"):
        raise argparse.ArgumentTypeError("tolerance must be finite and non-negative")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--tolerance", type=_tolerance, default=1e-9)
    common.add_argument("--max-points", type=_positive, default=vnring.DEFAULT_MAX_POINTS)
    common.add_argument("--format", choices=("json", "pretty"), default="json")

    parser = argparse.ArgumentParser(prog="stonevn", description="Finite von Neumann regular "
                                     "rings, Boolean algebras and Stone duality.")
    sub = parser.add_subparsers(dest="verb", metavar="command")
    sub.required = True
    for verb, (_, inputs, text) in COMMANDS.items():
        p = sub.add_parser(verb, parents=[common], help=text, description=text)
        for name in inputs:
            p.add_argument(f"--{name}", metavar="FILE")
        if verb == "residue-check":
            p.add_argument("--point", help="only this point (default: all)")
        if verb == "verify":
            p.add_argument("--only", type=_criteria_list, help="comma-separated criteria")
            p.add_argument("--quick", action="store_true", help="smaller sample counts")
        if verb == "check-smooth-axioms":
            p.add_argument("--expr", help="outer function for the composition check")
            p.add_argument("--points", type=_positive, default=3, help="coordinates of R^S")
            p.add_argument("--samples", type=_positive, default=1000)
    return parser


def _pretty(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return [pad + "(empty)"]
        width = max(len(str(k)) for k in value)
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_cell(v)}")
        return lines
    if isinstance(value, list):
        if _flat_list(value):
            return [pad + _cell(value)]
        lines = []
        for v in value:
            sub = _pretty(v, indent + 1)
            lines.append(pad + "-" + sub[0][len(pad) + 1:])
            lines.extend(sub[1:])
        return lines
    return [pad + _cell(value)]


def _flat_list(v):
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _cell(v):
    if isinstance(v, list):
        return "[" + ", ".join(_cell(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def render(result, fmt):
    if fmt == "json":
        return serialize.dumps(result.payload)
    lines = []
    if result.summary:
        lines.extend(result.summary.splitlines())
        lines.append("")
    lines.extend(_pretty(result.payload))
    return "\n".join(lines) + "\n"


def run(argv):
    """Parse ``argv`` and execute; returns (exit status, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_USAGE), "", ""
    handler = COMMANDS[args.verb][0]
    try:
        result = handler(_Inputs(args))
    except ParseError as exc:
        return EXIT_USAGE, "", f"stonevn: parse error: {exc}\n"
    except (ContractError, ResourceError, DomainError) as exc:
        return EXIT_USAGE, "", f"stonevn: {exc}\n"
    return (EXIT_OK if result.passed else EXIT_FAIL), render(result, args.format), ""


def main(argv=None):
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
