import pytest

from commlen.builder import BuildRefused, Case, CaseParams, build_diagram, diagram_certificate, k_hat
from commlen.fpword import INF
from commlen.stripdiag import face_powers


@pytest.mark.parametrize("n,N,k", [(3, 3, 1), (7, 3, 2), (9, 3, 2), (4, 4, 2), (8, 4, 3)])
def test_k_hat_values(n, N, k):
    assert k_hat(n, N) == k


def test_k_hat_infinite():
    assert [k_hat(n, INF) for n in range(1, 7)] == [1, 2, 2, 3, 3, 4]


def test_k_hat_domain():
    with pytest.raises(ValueError):
        k_hat(0, 3)
    with pytest.raises(ValueError):
        k_hat(3, 1)


def test_k_hat_monotone_in_N():
    for n in range(1, 41):
        vals = [k_hat(n, N) for N in range(2, 45)] + [k_hat(n, INF)]
        assert vals == sorted(vals)


@pytest.mark.parametrize("n,N,case", [(15, 5, Case.ODD_N_ODD_R), (11, 5, Case.ODD_N_EVEN_R),
                                      (14, 4, Case.EVEN_N_EVEN), (13, 4, Case.EVEN_N_ODD)])
def test_case_params(n, N, case):
    p = CaseParams.of(n, N)
    assert p.case is case and n == p.r * N + p.q and p.s == p.q // 2


@pytest.mark.parametrize("n,N", [(4, 3), (2, 3), (5, INF), (3, 2)])
def test_refusals(n, N):
    with pytest.raises(BuildRefused):
        build_diagram(n, N)


def test_odd_n_even_message():
    with pytest.raises(BuildRefused, match="N odd, n even: use decompose"):
        build_diagram(10, 5)


@pytest.mark.parametrize("n,N,g", [(15, 5, 5), (11, 5, 4), (14, 4, 5), (9, 3, 2), (5, 5, 2), (25, 5, 8)])
def test_certified_examples(n, N, g):
    cert = diagram_certificate(n, N)
    assert cert.ok and cert.genus == g


def test_built_diagram_is_a_copy():
    a = build_diagram(7, 5)
    a.name = "changed"
    assert build_diagram(7, 5).name != "changed"


def test_face_power_and_genus_of_d11_5():
    m = build_diagram(11, 5).close()
    assert face_powers(m) == [11] and m.genus() == 4


def test_genus_arithmetic_identities():
    # the displayed genus computations of the four cases, as integer identities
    for N in range(3, 51):
        for r in range(1, 21):
            for s in range((N - 1) // 2 + 1):
                if 2 * s < N:
                    n = r * N + 2 * s
                    assert k_hat(n, N) == k_hat(r * N, N) + s
                if N % 2 == 0 and 2 * s + 1 < N:
                    assert k_hat(r * N + 2 * s, N) == k_hat(r * N + 2 * s + 1, N)
            if N % 2 and r % 2 == 0:
                # Case 2: D+N+1,N has the genus (N-1)/2 of the D_{N,N} it is drawn on
                for s in range((N - 1) // 2):
                    assert k_hat(r * N + 2 * s + 1, N) == k_hat((r - 1) * N + 2 * s, N) + (N - 1) // 2
            if N % 2 and r % 2 and r >= 3:
                # Case 1: genera of the three parts add up
                assert k_hat(r * N, N) == k_hat((r - 2) * N, N) + (N - 3) // 2 + (N - 1) // 2
