"""Expression language and command-line front end.

Grammar (call syntax only, ASCII):

    expr   := IDENT '(' args? ')'
    args   := arg (',' arg)*
    arg    := IDENT '=' value | value
    value  := expr | NUMBER | '[' pairs? ']'
    pairs  := '(' NUMBER ',' NUMBER ')' (',' '(' NUMBER ',' NUMBER ')')*
    NUMBER := '-'? digits ('/' digits | '.' digits)?

Subcommands: eval, check-id, levy, germ, check-axioms.  Machine-readable
output goes to stdout, diagnostics to stderr; exit status 0 means no error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import convolve, infdiv, witt
from .measures import (CLASSICAL, FREE, KERNEL_RHO, KERNEL_SIGMA, CumulantSeq,
                       ClassicalNormal, ClassicalPoisson, Dirac, FreePoisson,
                       LevyPair, LK, Semicircle, family_to_classical_cumulants,
                       family_to_free_cumulants, sigma_to_rho)
from .partitions import (MomentSeq, classical_cumulants_from_moments,
                         free_cumulants_from_moments,
                         moments_from_classical_cumulants,
                         moments_from_free_cumulants)
from .series import MAX_ORDER, scalar_to_json

MOMENT = "moment"
STRANSFORM = "stransform"


class ExprError(ValueError):
    """Syntax or type error with a 1-based position in the source text."""

    def __init__(self, message, pos, expected=()):
        self.pos = pos
        self.expected = tuple(expected)
        if expected:
            message = "%s (expected %s)" % (message, ", ".join(sorted(expected)))
        super().__init__("column %d: %s" % (pos, message))


class EvalError(ValueError):
    """Domain error during evaluation, tagged with the failing AST path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__("at %s: %s" % (path, message))


# --- lexer -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<NUMBER>-?\d+(?:/\d+|\.\d+)?)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<SYM>[()\[\],=])
  | (?P<WS>\s+)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    pos: int


def tokenize(text):
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ExprError("unexpected character %r" % text[i], i + 1)
        i = m.end()
        kind = m.lastgroup
        if kind == "WS":
            continue
        value = m.group()
        out.append(Token(value if kind == "SYM" else kind, value, m.start() + 1))
    out.append(Token("END", "", len(text) + 1))
    return out


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class NumberNode:
    value: Fraction
    pos: int


@dataclass(frozen=True)
class AtomsNode:
    atoms: tuple
    pos: int


@dataclass(frozen=True)
class CallNode:
    name: str
    args: tuple
    kwargs: tuple  # ordered (name, node) pairs
    pos: int


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def expect(self, kind):
        tok = self.tokens[self.i]
        if tok.kind != kind:
            raise ExprError("got %s" % (tok.value or "end of input"),
                            tok.pos, expected={kind})
        self.i += 1
        return tok

    def parse(self):
        node = self.value()
        tok = self.peek()
        if tok.kind != "END":
            raise ExprError("trailing input %r" % tok.value, tok.pos,
                            expected={"END"})
        return node

    def value(self):
        tok = self.peek()
        if tok.kind == "NUMBER":
            self.i += 1
            return NumberNode(Fraction(tok.value), tok.pos)
        if tok.kind == "IDENT":
            return self.call()
        if tok.kind == "[":
            return self.atom_list()
        raise ExprError("got %s" % (tok.value or "end of input"), tok.pos,
                        expected={"NUMBER", "IDENT", "["})

    def call(self):
        name = self.expect("IDENT")
        self.expect("(")
        args = []
        kwargs = []
        if self.peek().kind != ")":
            while True:
                tok = self.peek()
                if (tok.kind == "IDENT"
                        and self.tokens[self.i + 1].kind == "="):
                    self.i += 2
                    kwargs.append((tok.value, self.value()))
                else:
                    if kwargs:
                        raise ExprError("positional argument after keyword",
                                        tok.pos)
                    args.append(self.value())
                if self.peek().kind != ",":
                    break
                self.i += 1
        self.expect(")")
        return CallNode(name.value, tuple(args), tuple(kwargs), name.pos)

    def atom_list(self):
        start = self.expect("[")
        atoms = []
        if self.peek().kind != "]":
            while True:
                self.expect("(")
                x = Fraction(self.expect("NUMBER").value)
                self.expect(",")
                w = Fraction(self.expect("NUMBER").value)
                self.expect(")")
                atoms.append((x, w))
                if self.peek().kind != ",":
                    break
                self.i += 1
        self.expect("]")
        return AtomsNode(tuple(atoms), start.pos)


def parse(text):
    """Parse an expression, returning its AST (kind-checked)."""
    node = _Parser(tokenize(text)).parse()
    infer_kinds(node)
    return node


# --- kinds and signatures ---------------------------------------------------

NUM = "num"
FREEISH = frozenset({FREE, MOMENT})
ONLY_FREE = frozenset({FREE})
ONLY_CLASSICAL = frozenset({CLASSICAL})

# name -> (parameter slots, result kinds); "num" slots take literals, kind
# sets take measure subexpressions whose kinds must intersect the slot.
OPS = {
    "dirac": ((NUM,), frozenset({FREE, CLASSICAL})),
    "semicircle": ((NUM, NUM), ONLY_FREE),
    "fpoisson": ((NUM, NUM), ONLY_FREE),
    "normal": ((NUM, NUM), ONLY_CLASSICAL),
    "cpoisson": ((NUM,), ONLY_CLASSICAL),
    "teich": ((NUM,), ONLY_FREE),
    "lk": ((), ONLY_FREE),  # keyword arguments, special-cased
    "boxplus": ((FREEISH, FREEISH), ONLY_FREE),
    "boxdot": ((FREEISH, FREEISH), ONLY_FREE),
    "boxtimes": ((FREEISH, FREEISH), frozenset({MOMENT})),
    "star": ((ONLY_CLASSICAL, ONLY_CLASSICAL), ONLY_CLASSICAL),
    "cconv": ((ONLY_CLASSICAL, ONLY_CLASSICAL), ONLY_CLASSICAL),
    "mix": ((NUM, FREEISH, FREEISH), frozenset({MOMENT})),
    "plusq": ((NUM, FREEISH, FREEISH), ONLY_FREE),
    "plusab": ((NUM, NUM, FREEISH, FREEISH), ONLY_FREE),
    "decalage": ((FREEISH,), ONLY_FREE),
    "frobenius": ((NUM, FREEISH), ONLY_FREE),
    "scale": ((NUM, FREEISH), ONLY_FREE),
    "shift": ((NUM, FREEISH), ONLY_FREE),
    "exp_rplus": ((FREEISH,), frozenset({STRANSFORM})),
    "exp_circle": ((FREEISH,), frozenset({STRANSFORM})),
    "log_mult": ((FREEISH,), ONLY_FREE),
    "bp": ((ONLY_CLASSICAL,), ONLY_FREE),
    "bp_inv": ((FREEISH,), ONLY_CLASSICAL),
}


def infer_kinds(node, want=None):
    """Static kind check; returns the set of kinds the node can produce."""
    if isinstance(node, NumberNode):
        raise ExprError("a bare number is not a measure expression", node.pos)
    if isinstance(node, AtomsNode):
        raise ExprError("an atom list is only valid inside lk(...)", node.pos)
    if node.name not in OPS:
        raise ExprError("unknown operation %r" % node.name, node.pos)
    slots, result = OPS[node.name]
    if node.name == "lk":
        _check_lk(node)
        return result
    if node.kwargs:
        raise ExprError("%s takes no keyword arguments" % node.name,
                        node.kwargs[0][1].pos)
    if len(node.args) != len(slots):
        raise ExprError("%s takes %d argument(s), got %d"
                        % (node.name, len(slots), len(node.args)), node.pos)
    for slot, arg in zip(slots, node.args):
        if slot == NUM:
            if not isinstance(arg, NumberNode):
                raise ExprError("%s needs a numeric literal here" % node.name,
                                getattr(arg, "pos", node.pos))
            continue
        if isinstance(arg, (NumberNode, AtomsNode)):
            raise ExprError("%s needs a measure expression here" % node.name,
                            arg.pos)
        got = infer_kinds(arg)
        if not got & slot:
            raise ExprError(
                "%s requires %s operands, got %s"
                % (node.name, "/".join(sorted(slot)), "/".join(sorted(got))),
                arg.pos)
    return result


def _check_lk(node):
    if node.args:
        raise ExprError("lk(...) takes keyword arguments only", node.pos)
    names = [k for k, _ in node.kwargs]
    if "gamma" not in names:
        raise ExprError("lk(...) needs gamma=", node.pos)
    kernels = [n for n in names if n in (KERNEL_RHO, KERNEL_SIGMA)]
    if len(kernels) != 1:
        raise ExprError("lk(...) needs exactly one of rho= or sigma=", node.pos)
    if set(names) - {"gamma", KERNEL_RHO, KERNEL_SIGMA}:
        raise ExprError("lk(...) only supports gamma, rho, sigma", node.pos)
    for key, val in node.kwargs:
        if key == "gamma" and not isinstance(val, NumberNode):
            raise ExprError("gamma must be a number", val.pos)
        if key in (KERNEL_RHO, KERNEL_SIGMA) and not isinstance(val, AtomsNode):
            raise ExprError("%s must be an atom list [(x,w),...]" % key, val.pos)


def print_expr(node):
    """Canonical text of an AST; parse(print_expr(parse(s))) == parse(s)."""
    if isinstance(node, NumberNode):
        return str(node.value)
    if isinstance(node, AtomsNode):
        return "[%s]" % ", ".join("(%s, %s)" % (x, w) for x, w in node.atoms)
    parts = [print_expr(a) for a in node.args]
    parts += ["%s=%s" % (k, print_expr(v)) for k, v in node.kwargs]
    return "%s(%s)" % (node.name, ", ".join(parts))


# --- evaluation ------------------------------------------------------------

@dataclass
class EvalContext:
    order: int
    backend: str  # "exact" | "float"

    def num(self, node):
        if self.backend == "float":
            return float(node.value)
        return node.value


@dataclass(frozen=True)
class Result:
    kind: str
    payload: object


def _as_free(res, ctx, path):
    if res.kind == FREE:
        return res.payload
    if res.kind == MOMENT:
        return free_cumulants_from_moments(res.payload)
    raise EvalError(path, "expected free-coordinate operand")


def _as_moments(res, ctx, path):
    if res.kind == MOMENT:
        return res.payload
    if res.kind == FREE:
        return moments_from_free_cumulants(res.payload)
    raise EvalError(path, "expected moment-coordinate operand")


def evaluate(node, ctx, want=None, path=""):
    """Evaluate a kind-checked AST node to a Result."""
    path = "%s/%s" % (path, node.name) if path else node.name
    try:
        return _eval_call(node, ctx, want, path)
    except EvalError:
        raise
    except (ValueError, TypeError) as err:
        raise EvalError(path, str(err)) from err


def _eval_call(node, ctx, want, path):
    name = node.name
    order = ctx.order
    result_kinds = OPS[name][1]
    if want:
        narrowed = result_kinds & want
        resolved = sorted(narrowed)[0] if narrowed else None
    else:
        resolved = FREE if FREE in result_kinds else sorted(result_kinds)[0]

    def arg_free(i):
        sub = evaluate(node.args[i], ctx, FREEISH, path)
        return _as_free(sub, ctx, path)

    def arg_moments(i):
        sub = evaluate(node.args[i], ctx, FREEISH, path)
        return _as_moments(sub, ctx, path)

    def arg_classical(i):
        sub = evaluate(node.args[i], ctx, ONLY_CLASSICAL, path)
        return sub.payload

    if name == "dirac":
        fam = Dirac(ctx.num(node.args[0]))
        if resolved == CLASSICAL:
            return Result(CLASSICAL, family_to_classical_cumulants(fam, order))
        return Result(FREE, family_to_free_cumulants(fam, order))
    if name == "semicircle":
        fam = Semicircle(ctx.num(node.args[0]), ctx.num(node.args[1]))
        return Result(FREE, family_to_free_cumulants(fam, order))
    if name == "fpoisson":
        fam = FreePoisson(ctx.num(node.args[0]), ctx.num(node.args[1]))
        return Result(FREE, family_to_free_cumulants(fam, order))
    if name == "normal":
        fam = ClassicalNormal(ctx.num(node.args[0]), ctx.num(node.args[1]))
        return Result(CLASSICAL, family_to_classical_cumulants(fam, order))
    if name == "cpoisson":
        fam = ClassicalPoisson(ctx.num(node.args[0]))
        return Result(CLASSICAL, family_to_classical_cumulants(fam, order))
    if name == "teich":
        return Result(FREE, witt.teichmueller(ctx.num(node.args[0]), order))
    if name == "lk":
        kw = dict(node.kwargs)
        kernel = KERNEL_RHO if KERNEL_RHO in kw else KERNEL_SIGMA
        atoms = kw[kernel].atoms
        if ctx.backend == "float":
            atoms = tuple((float(x), float(w)) for x, w in atoms)
        pair = LevyPair(ctx.num(kw["gamma"]), atoms, kernel)
        fam = LK(pair if kernel == KERNEL_RHO else sigma_to_rho(pair))
        return Result(FREE, family_to_free_cumulants(fam, order))
    if name == "boxplus":
        return Result(FREE, convolve.boxplus(arg_free(0), arg_free(1)))
    if name == "boxdot":
        return Result(FREE, convolve.boxdot(arg_free(0), arg_free(1)))
    if name == "boxtimes":
        return Result(MOMENT, convolve.boxtimes(arg_moments(0), arg_moments(1)))
    if name == "star":
        return Result(CLASSICAL, convolve.star(arg_classical(0), arg_classical(1)))
    if name == "cconv":
        return Result(CLASSICAL,
                      convolve.classical_convolve(arg_classical(0), arg_classical(1)))
    if name == "mix":
        return Result(MOMENT, witt.mix_moments(ctx.num(node.args[0]),
                                               arg_moments(1), arg_moments(2)))
    if name == "plusq":
        return Result(FREE, witt.plus_q(ctx.num(node.args[0]),
                                        arg_free(1), arg_free(2)))
    if name == "plusab":
        return Result(FREE, witt.plus_alpha_beta(
            ctx.num(node.args[0]), ctx.num(node.args[1]),
            arg_free(2), arg_free(3)))
    if name == "decalage":
        return Result(FREE, witt.decalage(arg_free(0)))
    if name == "frobenius":
        n = node.args[0].value
        if n.denominator != 1 or n < 0:
            raise EvalError(path, "frobenius exponent must be a nonnegative integer")
        return Result(FREE, witt.frobenius(int(n), arg_free(1)))
    if name == "scale":
        return Result(FREE, witt.scale_action(ctx.num(node.args[0]), arg_free(1)))
    if name == "shift":
        return Result(FREE, witt.shift_action(ctx.num(node.args[0]), arg_free(1)))
    if name == "exp_rplus":
        return Result(STRANSFORM, convolve.exp_map_rplus(arg_free(0)))
    if name == "exp_circle":
        return Result(STRANSFORM, convolve.exp_map_circle(arg_free(0)))
    if name == "log_mult":
        return Result(FREE, convolve.log_map(arg_moments(0)))
    if name == "bp":
        return Result(FREE, infdiv.bp_bijection(arg_classical(0)))
    if name == "bp_inv":
        return Result(CLASSICAL, infdiv.bp_inverse(arg_free(0)))
    raise EvalError(path, "unknown operation %r" % name)


def eval_expression(text, order, backend):
    """Parse and evaluate; returns (ast, Result)."""
    node = parse(text)
    ctx = EvalContext(order=order, backend=backend)
    return node, evaluate(node, ctx)


# --- output ----------------------------------------------------------------

def _render_values(values):
    return [scalar_to_json(v) for v in values]


def result_record(node, res, order, backend):
    out = {"expr": print_expr(node), "order": order, "backend": backend,
           "kind": res.kind}
    free_seq = None
    if res.kind == FREE:
        seq = res.payload
        out["cumulants"] = _render_values(seq.values)
        out["moments"] = _render_values(moments_from_free_cumulants(seq).values)
        out["result_order"] = seq.order
        free_seq = seq
    elif res.kind == CLASSICAL:
        seq = res.payload
        out["classical_cumulants"] = _render_values(seq.values)
        out["moments"] = _render_values(
            moments_from_classical_cumulants(seq).values)
        out["result_order"] = seq.order
    elif res.kind == MOMENT:
        m = res.payload
        out["moments"] = _render_values(m.values)
        free_seq = free_cumulants_from_moments(m)
        out["cumulants"] = _render_values(free_seq.values)
        out["result_order"] = m.order
    else:
        out["stransform"] = res.payload.to_json_dict()
        out["result_order"] = res.payload.order
    if free_seq is not None and free_seq.order >= 3:
        cert = infdiv.is_conditionally_pd(free_seq)
        out["certificate"] = cert.to_json_dict()
        if cert.pair is not None:
            out["levy"] = cert.pair.to_json_dict()["levy"]
    return out


def _tsv_series(rows):
    return "\n".join("\t".join(str(c) for c in row) for row in rows)


def record_to_tsv(record):
    rows = []
    key = "cumulants" if "cumulants" in record else "classical_cumulants"
    if key in record and "moments" in record:
        rows.append(("n", "cumulant", "moment"))
        for i, (k, m) in enumerate(zip(record[key], record["moments"]), start=1):
            rows.append((i, k, m))
    elif "stransform" in record:
        rows.append(("n", "s_n"))
        for i, c in enumerate(record["stransform"]["coeffs"]):
            rows.append((i, c))
    else:
        for k, v in record.items():
            rows.append((k, json.dumps(v)))
    return _tsv_series(rows)


# --- entry points ----------------------------------------------------------

def _common_flags(sub):
    sub.add_argument("--order", type=int, default=16,
                     help="truncation order, 1..%d (default 16)" % MAX_ORDER)
    sub.add_argument("--backend", choices=("exact", "float"), default="exact")
    sub.add_argument("--format", choices=("json", "tsv"), default="json")
    sub.add_argument("--seed", type=int, default=0,
                     help="seed for randomized subcommands")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="freeconv",
        description="convolutions of infinitely divisible measures in "
                    "truncated cumulant coordinates")
    subs = ap.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("eval", "evaluate a measure expression"),
            ("check-id", "certify conditional positive definiteness"),
            ("levy", "recover the canonical (gamma, rho) pair"),
            ("germ", "sampled analyticity/positivity report")):
        sub = subs.add_parser(name, help=help_text)
        sub.add_argument("expr")
        _common_flags(sub)
        if name == "germ":
            sub.add_argument("--region", choices=("uhp", "interval"),
                             default="uhp")
    ax = subs.add_parser("check-axioms", help="run the randomized axiom harness")
    ax.add_argument("--order", type=int, default=12)
    ax.add_argument("--cases", type=int, default=100)
    ax.add_argument("--seed", type=int, default=0)
    ax.add_argument("--format", choices=("json", "tsv"), default="json")
    return ap


def _emit(payload, fmt, to_tsv=None):
    if fmt == "tsv" and to_tsv is not None:
        print(to_tsv(payload))
    else:
        print(json.dumps(payload))


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "check-axioms":
            report = witt.check_omega_e_axioms(args.order, args.cases, args.seed)
            _emit(report.to_json_dict(), args.format)
            return 0
        if not 1 <= args.order <= MAX_ORDER:
            print("error: --order must be in 1..%d" % MAX_ORDER, file=sys.stderr)
            return 2
        if args.command == "eval":
            node, res = eval_expression(args.expr, args.order, args.backend)
            record = result_record(node, res, args.order, args.backend)
            _emit(record, args.format, record_to_tsv)
            return 0
        if args.command == "check-id":
            node, res = eval_expression(args.expr, args.order, args.backend)
            seq = _as_free(res, None, node.name)
            cert = infdiv.is_conditionally_pd(seq)
            _emit({"expr": print_expr(node),
                   "certificate": cert.to_json_dict()}, args.format)
            return 0
        if args.command == "levy":
            node, res = eval_expression(args.expr, args.order, args.backend)
            seq = _as_free(res, None, node.name)
            pair = infdiv.cumulants_to_levy_pair(seq)
            _emit({"expr": print_expr(node), **pair.to_json_dict()}, args.format)
            return 0
        if args.command == "germ":
            node, res = eval_expression(args.expr, args.order, args.backend)
            seq = _as_free(res, None, node.name)
            region = (convolve.UHP_REGION if args.region == "uhp"
                      else convolve.INTERVAL_REGION)
            report = convolve.germ_check(seq, region=region)
            _emit({"expr": print_expr(node), "germ": report.to_json_dict()},
                  args.format)
            return 0
        raise AssertionError("unhandled command")
    except (ExprError, EvalError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    except (ValueError, TypeError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 1


def run():
    sys.exit(main())
