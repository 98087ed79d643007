import pytest

from biramsey.ledger import ArithStep, CaseLedger, Env, evaluate


def test_evaluate_substitutes_names_and_lookups():
    z = {(18, 18, 2): 81, (18, 18, 3): 156}
    value, text = evaluate("2*z(b, b, 2) + z(b, b, 3)", {"b": 18}, lambda *k: z[k])
    assert (value, text) == (318, "2*81 + 156")
    assert evaluate(text) == (318, "2*81 + 156")


def test_evaluate_keeps_needed_parentheses():
    value, text = evaluate("a - (b - c) + ceil_div(a*b, c)", {"a": 9, "b": 5, "c": 2})
    assert value == 9 - 3 + 23
    assert text == "9 - (5 - 2) + ceil_div(9*5, 2)"
    assert evaluate(text)[0] == value
    assert evaluate("floor_div(71, 9)")[0] == 7


@pytest.mark.parametrize("expr", ["2 ** 3", "__import__('os')", "a.b", "1 / 2", "'x'", "f(1)"])
def test_evaluate_rejects_other_syntax(expr):
    with pytest.raises((ValueError, NameError)):
        evaluate(expr, {"a": 1})


def test_unknown_name():
    with pytest.raises(NameError):
        evaluate("q + 1", {})


def test_step_holds_and_recheck():
    env = Env(None, b=17)
    s = env.step("capacity", "2*74 + 141", "<", "b*b")
    assert not s.holds and s.status == "FAILS"
    assert s.recheck()
    t = env.step("capacity", "2*74 + 141", "<=", "b*b")
    assert t.holds and "289 ≤ 289" in t.line()
    forged = ArithStep("x", "1", "<", "2", "1", "2", 5, 2)
    assert not forged.recheck()
    with pytest.raises(ValueError):
        ArithStep("x", "1", "!=", "2", "1", "2", 1, 2)


def test_flagged_status():
    s = Env().step("edge", "71", ">=", "71", flag=True)
    assert s.holds and s.status == "FLAGGED"


def test_case_ledger_partition():
    env = Env()
    led = CaseLedger("demo")
    led.add_case("a", [env.step("ok", "3", ">", "2")])
    led.add_case("b", [env.step("bad", "1", ">", "2")])
    led.add_case("c", None)
    assert led.survivors == ["b", "c"]
    refuted = [c for c in led.cases if led.refuted(c)]
    assert set(refuted) | set(led.survivors) == set(led.cases)
    assert not set(refuted) & set(led.survivors)
    assert [s.label for s in led.failed_steps()] == ["bad"]
    assert not led.closed
    d = led.to_dict()
    assert d["survivors"] == ["b", "c"] and len(d["cases"]) == 3
