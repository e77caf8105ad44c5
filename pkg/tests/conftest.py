import os

from hypothesis import HealthCheck, settings, strategies as st

from commlen.fpword import A, INF, T, GroupCtx, Word, reduce

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=1000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ORDERS = [INF, 2, 3, 4, 5, 7]


@st.composite
def contexts(draw):
    N = draw(st.sampled_from(ORDERS))
    bigger = [M for M in ORDERS if M == INF or (N != INF and M >= N)]
    return GroupCtx(N, draw(st.sampled_from(bigger)))


def words(ctx, max_len=12):
    letters = st.tuples(st.sampled_from([A, T]), st.integers(-4, 4))
    return st.lists(letters, max_size=max_len).map(lambda raw: reduce(raw, ctx))


@st.composite
def ctx_and_words(draw, count=1, max_len=12):
    ctx = draw(contexts())
    ws = [draw(words(ctx, max_len)) for _ in range(count)]
    return (ctx, *ws)


def raw_syllables(max_len=16):
    return st.lists(st.tuples(st.sampled_from([A, T]), st.integers(-6, 6)), max_size=max_len)


def is_normal(w: Word) -> bool:
    syl = w.syllables
    for i, (g, e) in enumerate(syl):
        k = w.ctx.order(g)
        if e == 0 or (k != INF and not 0 < e < k):
            return False
        if i and syl[i - 1][0] == g:
            return False
    return True


# one line per acceptance criterion, shown at the end of the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
