"""``star-reduce`` command-line front end.

Elements are given in the expression grammar of :mod:`star_reduce.parser`
(``'`` is the star, ``^`` a power, ``*`` an ordered product). Results print as
normal-form text, or as JSON with ``--json``. Domain errors print
``{"error": code, "detail": ...}`` and exit 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, List, Optional

from . import certify as C
from . import poly as P
from . import serialize as S
from . import states as St
from . import weyl as W
from .errors import AlgebraMismatch, StarReduceError
from .parser import elaborate, infer_algebra, max_index, parse, render
from .scalars import GaussianRational

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2

GRAMMAR_HELP = """\
expression grammar:
  expr   := ['-'] term (('+' | '-') term)*
  term   := factor ('*' factor)*
  factor := atom [\"'\"...] ['^' nat]       apostrophe = star involution
  atom   := nat ['/' nat] | i | q<j> | p<j> | z<j> | zb<j> | '(' expr ')'
examples: "q0*p0 - p0*q0", "(z0*zb0 + z1*zb1)^2", "(q0 + i*p0)'"
"""


class UsageError(Exception):
    pass


# argument plumbing ----------------------------------------------------------------------


def _common(sub: argparse.ArgumentParser, elements: str | None = "*"):
    if elements:
        sub.add_argument("elements", nargs=elements, metavar="EXPR", help="element in the expression grammar")
    sub.add_argument("--element", action="append", default=[], metavar="EXPR", help="element (repeatable)")
    sub.add_argument("--algebra", choices=["weyl", "poly"])
    sub.add_argument("--dim", type=int, help="Weyl dimension m of W(R^m)")
    sub.add_argument("--n", type=int, help="polynomial algebra P(C^{1+n})")
    sub.add_argument("--s", type=int, help="signature: nu_i = +1 for i < s (default 1+n)")
    sub.add_argument("--mu", default="1", help="momentum value, exact rational (default 1)")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--json", action="store_true", help="full JSON output")
    sub.add_argument("--tol", type=float, help="tolerance for Hermite (float) states")
    sub.add_argument("--stdin", action="store_true", help="read element JSON (object or list) from stdin")


COMMANDS = {
    "mul": "product a*b of two elements",
    "star": "star involution a*",
    "poisson": "Poisson bracket {a, b}",
    "invariant": "whether an element is invariant",
    "reduce": "reduction [a]_mu into W(R^{m-1}) (weyl)",
    "decompose": "a = (p0 - mu) g + c (weyl)",
    "compress": "exact Gaussian compression with symbolic pi, k coefficients (weyl)",
    "compress-limit": "limit k -> infinity of the compression (weyl)",
    "average": "U(1) average of a polynomial",
    "homogenize": "f = f_h + (mu - J) g (poly)",
    "ideal-member": "membership in the ideal generated by J - mu (poly)",
    "reduced-equal": "equality of [f]_mu and [g]_mu (poly)",
    "eval": "evaluate a polynomial at --point",
    "reduced-eval": "delta_[w] of an invariant polynomial",
    "hom-matrix": "matrix X_ij = w_i conj(w_j) / J(w) of a point",
    "reconstruct": "recover [w] from --matrix",
    "classify": "inside / outside the reduced space",
    "expect": "state expectation omega(a)",
    "eigenstate": "eigenstate check omega(a*a) = |omega(a)|^2",
    "cs-check": "Cauchy-Schwarz inequality for omega, a, b",
    "reduce-state": "reduce an eigenstate of J to the reduced algebra",
    "verify-cert": "verify a qm / po / psatz certificate for a target",
    "sample": "seeded float points of the levelset J = mu",
    "falsify": "search sampled levelset points for negative values",
}

_POINT_CMDS = {"eval", "reduced-eval", "hom-matrix", "classify"}
_STATE_CMDS = {"expect", "eigenstate", "cs-check", "reduce-state"}
_NO_ELEMENT = {"hom-matrix", "reconstruct", "classify", "sample"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="star-reduce",
        description="Exact computations for reduction of *-algebras by a momentum map.",
        epilog=GRAMMAR_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subs = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, help_text in COMMANDS.items():
        sub = subs.add_parser(
            name, help=help_text, description=help_text, epilog=GRAMMAR_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        _common(sub, None if name in _NO_ELEMENT else "*")
        if name in _POINT_CMDS:
            sub.add_argument("--point", required=True, help='JSON list or comma-separated scalars, e.g. "1,1/2-i"')
        if name == "reconstruct":
            sub.add_argument("--matrix", required=True, help="row-major JSON matrix")
        if name in _STATE_CMDS:
            sub.add_argument("--state", required=True, help="state JSON")
        if name == "verify-cert":
            sub.add_argument("--cert", required=True, help="certificate JSON")
            sub.add_argument("--generator", action="append", default=[], metavar="EXPR",
                             help="generator of the quadratic module / preordering (qm, po)")
        if name in ("sample", "falsify"):
            sub.add_argument("--count", type=int, default=100)
    return ap


# resolution of algebra and size ---------------------------------------------------------------


class Context:
    def __init__(self, args, texts: List[str], stdin_elements: List[Any], state=None, point=None):
        self.args = args
        exprs = [parse(t) for t in texts]
        kinds = {k for k in (infer_algebra(e) for e in exprs) if k}
        kinds |= {"weyl" if isinstance(x, W.WeylElement) else "poly" for x in stdin_elements}
        if state is not None:
            kinds.add(state.algebra[0])
        if point is not None or args.command in _POINT_CMDS | {"reconstruct", "sample", "falsify"}:
            kinds.add("poly")
        if args.algebra:
            kinds.add(args.algebra)
        if len(kinds) > 1:
            raise AlgebraMismatch(f"inputs belong to different algebras: {sorted(kinds)}")
        self.algebra = kinds.pop() if kinds else "poly"
        top = max((max_index(e) for e in exprs), default=-1)
        if self.algebra == "weyl":
            size = args.dim
            if size is None and state is not None:
                size = state.algebra[1]
            if size is None:
                size = max([top + 1, 1] + [x.dim for x in stdin_elements])
        else:
            size = args.n
            if size is None and state is not None:
                size = state.algebra[1]
            if size is None and point is not None:
                size = len(point) - 1
            if size is None:
                size = max([top, 1] + [x.n for x in stdin_elements])
        self.size = size
        self.elements = [elaborate(e, self.algebra, size) for e in exprs] + list(stdin_elements)

    @property
    def sig(self) -> P.Signature:
        n = self.size
        s = self.args.s if self.args.s is not None else n + 1
        return P.Signature(n, s)

    @property
    def mu(self) -> GaussianRational:
        return GaussianRational.parse(self.args.mu)

    def take(self, count: int):
        if len(self.elements) != count:
            raise UsageError(f"{self.args.command} expects {count} element(s), got {len(self.elements)}")
        return self.elements if count > 1 else self.elements[0]


def _point(text: str):
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        return S.point_from_json(json.loads(text))
    return tuple(GaussianRational.parse(x) for x in text.split(","))


# output ------------------------------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _scalar_out(c, full: bool):
    if isinstance(c, complex):
        return [c.real, c.imag]
    return S.scalar_to_json(c) if full else str(c)


def _element_out(x, full: bool):
    return S.element_to_json(x) if full else render(x)


# commands ------------------------------------------------------------------------------------


def _run(args, ctx: Context) -> str:
    full = args.json
    cmd = args.command
    el = lambda x: _element_out(x, full)  # noqa: E731
    sc = lambda c: _scalar_out(c, full)  # noqa: E731

    def element_result(x, offset=0):
        return _dump(el(x)) if full else render(x, offset)

    if cmd == "mul":
        a, b = ctx.take(2)
        return element_result(a * b)
    if cmd == "star":
        return element_result(ctx.take(1).star())
    if cmd == "poisson":
        a, b = ctx.take(2)
        if ctx.algebra == "weyl":
            return element_result(W.poisson(a, b))
        return element_result(P.poisson(a, b, ctx.sig))
    if cmd == "invariant":
        a = ctx.take(1)
        return _dump({"invariant": W.is_invariant(a) if ctx.algebra == "weyl" else a.is_invariant()})
    if cmd == "reduce":
        # the reduced polynomial algebra has no normal form; see reduced-equal
        _require(ctx, "weyl")
        return element_result(W.reduce(ctx.take(1), ctx.mu), offset=1)
    if cmd in ("decompose", "compress", "compress-limit"):
        _require(ctx, "weyl")
        a = ctx.take(1)
        if cmd == "decompose":
            ideal, cofactor, complement = W.decompose(a, ctx.mu)
            return _dump({"ideal": el(ideal), "cofactor": el(cofactor), "complement": el(complement)})
        if cmd == "compress-limit":
            return element_result(W.compress_limit(a, ctx.mu), offset=1)
        result = W.compress(a, ctx.mu)
        if full:
            return _dump(S.compressed_to_json(result, a.dim - 1))
        items = sorted(result.items(), key=lambda kv: kv[0].sort_key())
        if not items:
            return "0"
        return "\n".join(f"{render(W.WeylElement.monomial(m.k, m.l), offset=1)}: {c}" for m, c in items)
    if cmd == "average":
        _require(ctx, "poly")
        return element_result(P.average(ctx.take(1)))
    if cmd == "homogenize":
        _require(ctx, "poly")
        fh, g = P.homogenize(ctx.take(1), ctx.sig, ctx.mu)
        return _dump({"homogenized": el(fh), "cofactor": el(g)})
    if cmd == "ideal-member":
        _require(ctx, "poly")
        member, witness = P.ideal_member(ctx.take(1), ctx.sig, ctx.mu)
        key = "cofactor" if member else "obstruction"
        return _dump({"member": member, key: el(witness)})
    if cmd == "reduced-equal":
        _require(ctx, "poly")
        f, g = ctx.take(2)
        return _dump({"equal": P.reduced_equal(f, g, ctx.sig, ctx.mu)})
    if cmd == "eval":
        _require(ctx, "poly")
        return _dump({"value": sc(P.evaluate(ctx.take(1), ctx.point))})
    if cmd == "reduced-eval":
        _require(ctx, "poly")
        value = P.reduced_evaluate(ctx.take(1), P.ProjPoint(ctx.point), ctx.sig, ctx.mu)
        return _dump({"value": sc(value)})
    if cmd == "hom-matrix":
        X = P.hom_matrix(P.ProjPoint(ctx.point), ctx.sig)
        if full:
            return _dump(S.hom_matrix_to_json(X))
        return _dump([[str(c) for c in row] for row in X.rows])
    if cmd == "reconstruct":
        X = S.hom_matrix_from_json(json.loads(args.matrix))
        w = P.reconstruct_point(X, ctx.sig)
        return _dump({"w": S.point_to_json(w) if full else [str(c) for c in w.w]})
    if cmd == "classify":
        return _dump({"class": P.classify_hom(P.ProjPoint(ctx.point), ctx.sig, ctx.mu).value})
    if cmd == "expect":
        return _dump({"value": sc(St.state_expect(ctx.state, ctx.take(1)))})
    if cmd == "eigenstate":
        result = St.eigenstate_check(ctx.state, ctx.take(1), args.tol)
        out = {"eigenstate": bool(result.is_eigenstate), "eigenvalue": sc(result.eigenvalue)}
        if full:
            out["variance"] = sc(result.variance)
        return _dump(out)
    if cmd == "cs-check":
        a, b = ctx.take(2)
        return _dump({"holds": bool(St.cauchy_schwarz_check(ctx.state, a, b))})
    if cmd == "reduce-state":
        return _dump(S.state_to_json(St.reduce_state(ctx.state, ctx.sig, ctx.mu)))
    if cmd == "verify-cert":
        return _verify_cert(args, ctx)
    if cmd == "sample":
        _require_seed(args)
        points = C.sample_levelset(ctx.sig, float(ctx.mu.re), args.count, args.seed)
        return _dump([[[z.real, z.imag] for z in w] for w in points])
    if cmd == "falsify":
        _require_seed(args)
        result = C.pointwise_falsify(ctx.take(1), ctx.sig, float(ctx.mu.re), args.count, args.seed)
        return _dump(S.falsify_to_json(result))
    raise UsageError(f"unknown command {cmd}")


def _require(ctx: Context, algebra: str):
    if ctx.algebra != algebra:
        raise AlgebraMismatch(f"{ctx.args.command} needs the {algebra} algebra, got {ctx.algebra}")


def _require_seed(args):
    if args.seed is None:
        raise UsageError(f"{args.command} is randomized and requires --seed")


def _verify_cert(args, ctx: Context) -> str:
    target = ctx.take(1)
    cert = S.certificate_from_json(json.loads(args.cert), ctx.algebra, ctx.size)
    gens = [elaborate(parse(t), ctx.algebra, ctx.size) for t in args.generator]
    if isinstance(cert, C.QMCertificate):
        return _dump({"valid": C.verify_qm(target, gens, cert)})
    if isinstance(cert, C.POCertificate):
        return _dump({"valid": C.verify_po(target, gens, cert)})
    _require(ctx, "poly")
    valid = C.verify_positivstellensatz(target, ctx.sig, ctx.mu, cert)
    return _dump({"valid": valid, "p_membership": "unchecked"})


# entry point -----------------------------------------------------------------------------------


def _error_json(e: StarReduceError) -> str:
    return _dump({"error": e.code, "detail": _jsonable(e.detail)})


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def main(argv: Optional[List[str]] = None, stdin=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        texts = list(getattr(args, "elements", None) or []) + list(args.element)
        stdin_elements = []
        if args.stdin:
            data = json.load(stdin or sys.stdin)
            items = data if isinstance(data, list) else [data]
            stdin_elements = [S.element_from_json(x) for x in items]
        state = S.state_from_json(json.loads(args.state)) if hasattr(args, "state") else None
        point = _point(args.point) if hasattr(args, "point") else None
        ctx = Context(args, texts, stdin_elements, state, point)
        ctx.state, ctx.point = state, point
        out = _run(args, ctx)
    except UsageError as e:
        parser.exit(EXIT_USAGE, f"star-reduce {args.command}: error: {e}\n")
    except StarReduceError as e:
        print(_error_json(e), file=stdout)
        return EXIT_DOMAIN
    except (ValueError, KeyError, TypeError, ZeroDivisionError, json.JSONDecodeError) as e:
        print(_dump({"error": "InvalidInput", "detail": str(e)}), file=stdout)
        return EXIT_DOMAIN
    print(out, file=stdout)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
