import json
import random
from fractions import Fraction

import pytest

from freeconv.cli import (AtomsNode, CallNode, EvalError, ExprError,
                          NumberNode, eval_expression, main, parse, print_expr)

F = Fraction


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_valid_call():
    node = parse("boxdot(semicircle(1,2), semicircle(2,2))")
    assert node.name == "boxdot"
    assert [a.name for a in node.args] == ["semicircle", "semicircle"]


def test_parse_lk_with_keywords():
    node = parse("lk(gamma=1, rho=[(1/2,1/4)])")
    assert node.name == "lk"
    kw = dict(node.kwargs)
    assert kw["gamma"].value == 1
    assert kw["rho"].atoms == ((F(1, 2), F(1, 4)),)


def test_parse_reports_position_and_expectation():
    with pytest.raises(ExprError) as exc:
        parse("boxplus(dirac(1), ")
    assert exc.value.pos == 19
    with pytest.raises(ExprError) as exc:
        parse("boxplus dirac(1)")
    assert "(" in exc.value.expected
    with pytest.raises(ExprError) as exc:
        parse("boxplus(dirac(1)")
    assert exc.value.pos == 17


def test_type_error_star_on_free():
    with pytest.raises(ExprError) as exc:
        parse("star(fpoisson(1,1), fpoisson(1,1))")
    assert "classical" in str(exc.value)


def test_type_error_positions_and_arity():
    with pytest.raises(ExprError):
        parse("boxplus(dirac(1))")
    with pytest.raises(ExprError):
        parse("nosuchop(dirac(1))")
    with pytest.raises(ExprError):
        parse("boxplus(normal(0,1), dirac(1))")
    with pytest.raises(ExprError):
        parse("dirac(dirac(1))")
    with pytest.raises(ExprError):
        parse("42")


def test_dirac_is_kind_polymorphic():
    assert parse("star(dirac(2), cpoisson(1))") is not None
    assert parse("boxplus(dirac(2), semicircle(0,2))") is not None


def test_print_parse_round_trip_on_random_asts():
    rng = random.Random(5)

    def rand_num():
        return NumberNode(F(rng.randint(-8, 8), rng.randint(1, 6)), 0)

    def rand_measure(depth, kinds):
        if depth == 0 or rng.random() < 0.3:
            if kinds == "classical":
                return rng.choice([
                    CallNode("cpoisson", (NumberNode(F(rng.randint(1, 5)), 0),), (), 0),
                    CallNode("normal", (rand_num(), NumberNode(F(rng.randint(0, 4)), 0)), (), 0),
                    CallNode("dirac", (rand_num(),), (), 0)])
            choice = rng.randint(0, 3)
            if choice == 0:
                return CallNode("dirac", (rand_num(),), (), 0)
            if choice == 1:
                return CallNode("semicircle", (rand_num(), NumberNode(F(rng.randint(0, 4)), 0)), (), 0)
            if choice == 2:
                return CallNode("fpoisson", (NumberNode(F(rng.randint(0, 4)), 0), rand_num()), (), 0)
            return CallNode("lk", (), (("gamma", rand_num()),
                                       ("rho", AtomsNode(((F(1, 2), F(1, 4)),), 0))), 0)
        if kinds == "classical":
            op = rng.choice(["star", "cconv"])
            return CallNode(op, (rand_measure(depth - 1, "classical"),
                                 rand_measure(depth - 1, "classical")), (), 0)
        op = rng.choice(["boxplus", "boxdot", "boxtimes", "plusq", "frobenius",
                         "scale", "shift", "mix", "log_mult", "bp"])
        if op == "bp":
            return CallNode("bp", (rand_measure(depth - 1, "classical"),), (), 0)
        if op in ("plusq", "mix"):
            return CallNode(op, (NumberNode(F(rng.randint(0, 6), 6), 0),
                                 rand_measure(depth - 1, "free"),
                                 rand_measure(depth - 1, "free")), (), 0)
        if op == "frobenius":
            return CallNode(op, (NumberNode(F(rng.randint(0, 3)), 0),
                                 rand_measure(depth - 1, "free")), (), 0)
        if op in ("scale", "shift"):
            n = NumberNode(abs(rand_num().value), 0)
            return CallNode(op, (n, rand_measure(depth - 1, "free")), (), 0)
        if op == "log_mult":
            return CallNode(op, (rand_measure(depth - 1, "free"),), (), 0)
        return CallNode(op, (rand_measure(depth - 1, "free"),
                             rand_measure(depth - 1, "free")), (), 0)

    for _ in range(200):
        ast = rand_measure(rng.randint(0, 3), "free")
        text = print_expr(ast)
        reparsed = parse(text)
        assert print_expr(reparsed) == text


def test_eval_examples():
    _, res = eval_expression("boxplus(dirac(1), dirac(2))", 6, "exact")
    assert res.payload.values == (3, 0, 0, 0, 0, 0)
    _, res = eval_expression("frobenius(2, teich(3))", 4, "exact")
    assert res.payload.values == (9, 81, 729, 6561)
    _, res = eval_expression("bp(cpoisson(2))", 5, "exact")
    assert res.payload.kind == "free"
    assert res.payload.values == (2, 2, 2, 2, 2)


def test_eval_propagates_domain_error_with_path():
    with pytest.raises(EvalError) as exc:
        eval_expression("scale(-1, dirac(1))", 6, "exact")
    assert "scale" in exc.value.path


def test_cli_eval_json(capsys):
    code, out, err = run_cli(capsys, "eval", "boxplus(dirac(1), dirac(2))",
                             "--order", "6")
    assert code == 0 and err == ""
    data = json.loads(out)
    assert data["cumulants"][0] == "3/1"
    assert data["moments"][1] == "9/1"
    # the record carries the certificate and the recovered pair when available
    assert data["certificate"]["verdict"] == "certified-ID"
    assert data["levy"]["gamma"] == "3/1"


def test_cli_eval_float_backend(capsys):
    code, out, _ = run_cli(capsys, "eval", "semicircle(0,2)", "--order", "4",
                           "--backend", "float")
    data = json.loads(out)
    assert data["cumulants"] == [0.0, 1.0, 0.0, 0.0]


def test_cli_eval_tsv(capsys):
    code, out, _ = run_cli(capsys, "eval", "dirac(2)", "--order", "3",
                           "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["n", "cumulant", "moment"]
    assert lines[1].split("\t") == ["1", "2/1", "2/1"]


def test_cli_eval_stransform(capsys):
    code, out, _ = run_cli(capsys, "eval", "exp_circle(dirac(1))", "--order", "5")
    data = json.loads(out)
    assert code == 0
    assert data["kind"] == "stransform"
    assert data["stransform"]["backend"] == "complex-float"


def test_cli_check_id_and_levy(capsys):
    code, out, _ = run_cli(capsys, "check-id", "fpoisson(1,1)", "--order", "8")
    assert code == 0
    assert json.loads(out)["certificate"]["verdict"] == "certified-ID"
    code, out, _ = run_cli(capsys, "levy", "fpoisson(1,1)", "--order", "8")
    assert code == 0
    data = json.loads(out)
    assert data["levy"]["gamma"] == "1/1"
    assert data["levy"]["atoms"] == [["1/1", "1/1"]]
    # refuted input: diagnostic on stderr, nonzero exit
    code, out, err = run_cli(capsys, "levy", "mix(1/2, dirac(-1), dirac(1))",
                             "--order", "6")
    assert code != 0 and out == "" and "refuted" in err


def test_cli_germ(capsys):
    code, out, _ = run_cli(capsys, "germ", "fpoisson(1,1/2)", "--order", "9",
                           "--region", "interval")
    assert code == 0
    data = json.loads(out)
    assert data["germ"]["pass"] is True and data["germ"]["poles"] == [2.0]
    code, out, _ = run_cli(capsys, "germ", "fpoisson(1,-2)", "--order", "9",
                           "--region", "interval")
    data = json.loads(out)
    assert data["germ"]["pass"] is False


def test_cli_check_axioms(capsys):
    code, out, _ = run_cli(capsys, "check-axioms", "--order", "8",
                           "--cases", "5", "--seed", "2")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True and data["cases"] == 5


def test_cli_parse_error_exit_code(capsys):
    code, out, err = run_cli(capsys, "eval", "boxplus(dirac(1)")
    assert code == 2 and out == "" and "column" in err


def test_cli_deterministic_output(capsys):
    args = ("eval", "boxdot(semicircle(1,2), fpoisson(2,1/3))", "--order", "9")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_cli_order_bounds(capsys):
    code, _, err = run_cli(capsys, "eval", "dirac(1)", "--order", "65")
    assert code == 2 and "order" in err
