import pytest

from commlen.fpword import (A, FREE, INF, T, GroupCtx, Word, WordSyntaxError, are_conjugate, at_power,
                            commutator, conjugate, conjugator_between, cyclic_reduce, parse,
                            parse_order, reduce, render_symmetric)


def test_reduce_merges_and_cancels():
    assert reduce([(A, 1), (A, 2), (T, 1), (T, -1), (A, -3)], FREE).is_identity()
    assert reduce([(A, 2), (A, 2)], GroupCtx(3, INF)).syllables == ((A, 1),)


def test_exponents_normalized_into_range():
    ctx = GroupCtx(3, 5)
    assert Word.gen(A, -1, ctx).syllables == ((A, 2),)
    assert Word.gen(T, 7, ctx).syllables == ((T, 2),)
    assert Word.gen(A, 3, ctx).is_identity()


def test_parse_sugar():
    assert parse("[a,t]") == parse("a^-1 t^-1 a t")
    assert parse("(ab)^3") == parse("a t a t a t")
    assert parse("[a,b]^2") == at_power(2)
    assert parse("1") == Word.identity()
    assert parse("(a t)^-1") == parse("t^-1 a^-1")


@pytest.mark.parametrize("text", ["a^", "[a,t", "x", "a)", "(a"])
def test_parse_errors(text):
    with pytest.raises(WordSyntaxError):
        parse(text)


def test_parse_order():
    assert parse_order("inf") == INF
    assert parse_order("7") == 7
    with pytest.raises(ValueError):
        parse_order("2.5")


def test_context_validation():
    with pytest.raises(ValueError):
        GroupCtx(1, INF)
    with pytest.raises(ValueError):
        GroupCtx(5, 3)


def test_context_mismatch_is_an_error():
    with pytest.raises(ValueError):
        Word.gen(A) * Word.gen(A, 1, GroupCtx(2, INF))


def test_conventions():
    x, y, c = parse("a"), parse("t"), parse("t a")
    assert commutator(x, y) == parse("a^-1 t^-1 a t")
    assert conjugate(x, c) == ~c * x * c
    assert at_power(3) == commutator(x, y) ** 3


def test_cyclic_reduce_and_conjugator():
    u = parse("t a t^-1 a t a^-1 t^-1")
    core, c = cyclic_reduce(u)
    assert conjugate(core, c) == u
    assert len(core) < 2 or core.syllables[0][0] != core.syllables[-1][0]
    v = conjugate(at_power(2), parse("a t^3"))
    w = conjugator_between(at_power(2), v)
    assert conjugate(at_power(2), w) == v
    assert conjugator_between(at_power(2), at_power(3)) is None


def test_conjugacy_inside_a_factor():
    ctx = GroupCtx(5, INF)
    assert are_conjugate(parse("t a^2 t^-1", ctx), parse("a^2", ctx))
    assert not are_conjugate(parse("a^2", ctx), parse("a^3", ctx))


def test_render_symmetric():
    assert render_symmetric(parse("a^-1 t", GroupCtx(3, INF))) == "a^-1 t"
    assert str(parse("a^-1 t", GroupCtx(3, INF))) == "a^2 t"
