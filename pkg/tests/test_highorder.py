import random
import time
from fractions import Fraction as F

import pytest

from wigner3nj import coupling, highorder
from wigner3nj.coupling import WignerDomainError, wigner6j
from wigner3nj.exact import Surd, SurdVec, escalation_count, format_exact, parse_exact
from wigner3nj.golden import load_golden
from wigner3nj.highorder import (
    Kind,
    SymbolSpec,
    chain_3nj_first,
    chain_3nj_second,
    evaluate,
    wigner12j_first,
    wigner12j_second,
    wigner15j_fifth,
    wigner15j_fourth,
    wigner15j_third,
)

GOLDEN = load_golden()


def golden(kind):
    return [r for r in GOLDEN if r.kind == kind]


def spec_of(row):
    return SymbolSpec(Kind.from_label(row.kind), row.args)


# -- direct calls with structured signatures ------------------------------------------

def test_12j_first_examples():
    assert wigner12j_first([0, 1, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]) == Surd(F(1, 54))
    assert wigner12j_first([1, 1, 2, 2], [2, 2, 2, 1], [1, 2, 1, 2]) == Surd(F(-7, 3000), F(7, 3))
    assert wigner12j_first([20, 15, 9, 10], [14, 18, 15, 15], [9, 8, 10, 12]) == Surd(
        F(-28068059458324, 13772930246561475), F(2, 1431494295))


def test_12j_second_examples():
    assert wigner12j_second([6, 4, 7, 4], [6, 7, 4, 4], [2, 5, 7, 1]) == parse_exact(
        "-28/23595*(1/195)^(1/2)")
    assert wigner12j_second([5.5, 4.5, 6.5, 3.5], [6, 6, 5, 3], [1.5, 4.5, 6.5, 0.5]) == Surd(
        F(1, 572572), 57)
    # k1 + k2 and j3 + j1 force opposite parities for x: empty range
    assert wigner12j_second([1, 1, 1, 1], [1, 1, 1, 1], [0.5, 1, 1, 1]) == Surd(0)


def test_chain_examples():
    assert chain_3nj_first([3, 3, 2, 4, 2.5], [4, 4, 5, 2.5, 5], [2.5, 2.5, 4.5, 4.5, 3]) == \
        parse_exact("-16939/2904545952*(13/55)^(1/2)")
    assert chain_3nj_first([0.5, 3, 3.5, 5, 4], [2.5, 4.5, 3.5, 3, 3.5], [2.5, 2, 4.5, 5, 3]) == \
        parse_exact("147899/512265600*(1/429)^(1/2)")
    assert chain_3nj_second([3.5, 3.5, 5, 0.5, 2], [6, 6.5, 5.5, 2.5, 5.5], [5, 4, 5.5, 6, 6.5]) == \
        parse_exact("346789/9717364800*(119/4290)^(1/2)")
    assert chain_3nj_second([4, 1.5, 2, 3, 3.5], [3.5, 2.5, 4, 2.5, 0.5], [4, 1.5, 1, 3, 3.5]) == \
        parse_exact("-1157/3386880*(1/35)^(1/2)")
    assert chain_3nj_second([0.5] * 5, [0.5] * 5, [1] * 5) == Surd(0)


def test_chain_length_checks():
    with pytest.raises(WignerDomainError):
        chain_3nj_first([1] * 3, [1] * 3, [1] * 3)
    with pytest.raises(WignerDomainError):
        chain_3nj_second([1] * 4, [1] * 4, [1] * 4)
    with pytest.raises(WignerDomainError):
        wigner12j_first([1] * 4, [1] * 4, [1] * 3)


def test_15j_third_examples():
    r1 = golden("15j3")[0]
    assert format_exact(wigner15j_third(*r1.args)) == "75443/19434729600*(17/33)^(1/2)"
    r5 = golden("15j3")[4]
    assert format_exact(wigner15j_third(*r5.args)) == "211/1724800*(3/77)^(1/2)"
    # (k, j) = (1, 1/2) and (p1, p2) = (1, 1) disagree on the parity of x
    assert wigner15j_third(1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0.5, 1, 1, 1) == Surd(0)


def test_15j_fourth_examples():
    rows = golden("15j4")
    assert format_exact(wigner15j_fourth(*rows[0].args)) == "101/17249760*(7/143)^(1/2)"
    assert wigner15j_fourth(*rows[3].args) == Surd(0)
    assert format_exact(wigner15j_fourth(*rows[4].args)) == "-5/54432*(1/14)^(1/2)"


def test_15j_fifth_examples_take_columns():
    # printed rows:  1 4.5 3.5 5 4.5 / 6.5 6 3.5 3 5.5 / 5 2 4 5 5
    v = wigner15j_fifth(k=[1, 6.5, 5], kp=[4.5, 6, 2], j=[3.5, 3.5, 4], l=[5, 3, 5], lp=[4.5, 5.5, 5])
    assert format_exact(v) == "-1430315/13264202952*(1/462)^(1/2)"
    assert format_exact(evaluate(spec_of(golden("15j5")[1]))) == "17/288288*(1/2145)^(1/2)"
    assert wigner15j_fifth([0.5] * 3, [0.5] * 3, [0.5] * 3, [0.5] * 3, [0.5] * 3) == Surd(0)


# -- dispatch ------------------------------------------------------------------------------

def test_evaluate_examples():
    assert evaluate(spec_of(golden("12j1")[0])) == Surd(F(1, 54))
    assert format_exact(evaluate(spec_of(golden("15j1")[2]))) == "-13/1829520*(13/6)^(1/2)"
    assert evaluate(SymbolSpec(Kind.SIX_J, (1, 1, 1, 1, 1, 1))) == Surd(F(1, 6))
    assert evaluate(SymbolSpec(Kind.THREE_JM, (1, 1, 0, 1, -1, 0))).square() == F(1, 3)


def test_symbolspec_arity():
    with pytest.raises(WignerDomainError):
        SymbolSpec(Kind.TWELVE_J1, (1,) * 11)
    with pytest.raises(WignerDomainError):
        SymbolSpec(Kind.SIX_J, (1, 1, 1, 1, 1, -1))
    with pytest.raises(WignerDomainError):
        Kind.from_label("21j")


@pytest.mark.parametrize("row", GOLDEN, ids=lambda r: f"{r.group}-{r.row}")
def test_golden_row(row):
    value = evaluate(spec_of(row))
    assert isinstance(value, Surd)
    assert format_exact(value) == row.exact
    assert value.to_decimal(12) == row.decimal


# -- properties ------------------------------------------------------------------------------

def test_12j_first_hand_reduction():
    # only x = 1 survives; three factors equal -1/3, one equals 1/6
    f = [wigner6j(0, 1, 1, 1, 1, 1), wigner6j(1, 1, 1, 1, 1, 1),
         wigner6j(1, 1, 1, 1, 1, 0), wigner6j(1, 1, 1, 0, 1, 1)]
    assert f == [Surd(F(-1, 3)), Surd(F(1, 6)), Surd(F(-1, 3)), Surd(F(-1, 3))]
    hand = F(3) * (-1) ** 11 * F(-1, 3) * F(1, 6) * F(-1, 3) * F(-1, 3)
    assert hand == F(1, 54)
    assert wigner12j_first([0, 1, 1, 1], [1, 1, 0, 1], [1, 1, 1, 1]) == Surd(hand)


def random_12j_first(rng, top=8):
    """Doubled arguments (max momentum top/2) with every x-free triad satisfied."""
    t = coupling._tri
    while True:
        j = [rng.randint(0, top) for _ in range(4)]
        k = [rng.randint(0, top) for _ in range(4)]
        l = []
        for i in range(4):
            if i < 3:
                pairs = ((j[i], j[i + 1]), (k[i], k[i + 1]))
            else:
                pairs = ((j[3], k[0]), (j[0], k[3]))
            choices = [v for v in coupling.span(pairs) if v <= top]
            if not choices:
                break
            l.append(rng.choice(choices))
        else:
            assert all(t(j[i], j[i + 1], l[i]) and t(k[i], k[i + 1], l[i]) for i in range(3))
            return j, l, k


def test_chain_matches_12j_first_on_set_I():
    for row in golden("12j1"):
        a = row.args
        assert chain_3nj_first(a[0:4], a[4:8], a[8:12]) == evaluate(spec_of(row))


def test_chain_matches_12j_first_random():
    rng = random.Random(1234)
    nonzero = 0
    for _ in range(200):
        j, l, k = random_12j_first(rng)
        h = lambda v: [F(x, 2) for x in v]  # noqa: E731
        a = wigner12j_first(h(j), h(l), h(k))
        b = chain_3nj_first(h(j), h(l), h(k))
        assert (a.coeff, a.radicand) == (b.coeff, b.radicand)
        nonzero += bool(a)
    assert nonzero > 50


@pytest.mark.parametrize("row", GOLDEN, ids=lambda r: f"{r.group}-{r.row}")
def test_zero_detection(row):
    args = list(row.args)
    # +40 keeps the parity but breaks every triad containing the first momentum
    args[0] = str(F(args[0]) + 40)
    assert evaluate(SymbolSpec(Kind.from_label(row.kind), tuple(args))) == Surd(0)


def _wide_span(pairs):
    hi = max(a + b for a, b in pairs)
    return range(0, hi + 5)


@pytest.mark.parametrize("row", [r for r in GOLDEN if max(F(a) for a in r.args) <= 5],
                         ids=lambda r: f"{r.group}-{r.row}")
def test_x_range_soundness(row, monkeypatch):
    tight = evaluate(spec_of(row))
    monkeypatch.setattr(highorder, "span", _wide_span)
    monkeypatch.setattr(coupling, "span", _wide_span)
    assert evaluate(spec_of(row)) == tight


def test_x_range_soundness_random(monkeypatch):
    rng = random.Random(99)
    cases = [random_12j_first(rng, top=5) for _ in range(30)]
    h = lambda v: [F(x, 2) for x in v]  # noqa: E731
    tight = [wigner12j_second(h(j), h(l), h(k)) for j, l, k in cases]
    monkeypatch.setattr(highorder, "span", _wide_span)
    assert [wigner12j_second(h(j), h(l), h(k)) for j, l, k in cases] == tight


# -- 18-j -------------------------------------------------------------------------------------

def random_chain(rng, n, top=12):
    t = coupling._tri
    while True:
        j = [rng.randint(0, top) for _ in range(n)]
        k = [rng.randint(0, top) for _ in range(n)]
        l = []
        for i in range(n - 1):
            c = [v for v in coupling.span(((j[i], j[i + 1]), (k[i], k[i + 1]))) if v <= top]
            if not c:
                break
            l.append(rng.choice(c))
        else:
            c = [v for v in range(top + 1) if t(v, j[-1], k[0]) or t(v, j[0], k[-1])]
            l.append(rng.choice(c or [0]))
            return [F(v, 2) for v in j], [F(v, 2) for v in l], [F(v, 2) for v in k]


@pytest.mark.parametrize("kind", [Kind.EIGHTEEN_J1, Kind.EIGHTEEN_J2])
def test_18j_terminates_and_parity_holds(kind):
    rng = random.Random(kind.label)
    nonzero = 0
    for _ in range(60):
        j, l, k = random_chain(rng, 6)
        t0 = time.perf_counter()
        v = evaluate(SymbolSpec(kind, tuple(j + l + k)))   # SelectionRuleError would propagate
        assert time.perf_counter() - t0 < 1.0
        assert isinstance(v, Surd)
        nonzero += bool(v)
    assert nonzero > 0


@pytest.mark.parametrize("kind", [Kind.EIGHTEEN_J1, Kind.EIGHTEEN_J2])
def test_18j_selection_zero(kind):
    rng = random.Random(7)
    for _ in range(20):
        j, l, k = random_chain(rng, 6)
        j[0] += 40
        assert evaluate(SymbolSpec(kind, tuple(j + l + k))) == Surd(0)


def test_18j_first_kind_known_nonzero():
    # all ones: every triad (1,1,1) holds
    v = chain_3nj_first([1] * 6, [1] * 6, [1] * 6)
    w = chain_3nj_second([1] * 6, [1] * 6, [1] * 6)
    assert isinstance(v, Surd) and isinstance(w, Surd)


def test_no_escalation():
    assert escalation_count() == 0
    assert not isinstance(evaluate(spec_of(GOLDEN[-1])), SurdVec)
