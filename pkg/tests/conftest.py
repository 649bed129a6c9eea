import pytest
from hypothesis import settings, strategies as st

from mixdisc.exact import GaussianRational, HermitianMatrix
from mixdisc.harness import SplitMix64, gen_psd

settings.register_profile("exact", deadline=None, max_examples=60)
settings.load_profile("exact")

ACCEPTANCE: list[tuple[str, bool, str]] = []


def H(rows):
    return HermitianMatrix(rows)


def diag(*vals):
    return HermitianMatrix.diag(list(vals))


def eye(n):
    return HermitianMatrix.identity(n)


small_q = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def hermitian(draw, n):
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(draw(small_q))
        for j in range(i + 1, n):
            z = GaussianRational(draw(small_q), draw(small_q))
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return HermitianMatrix(rows)


@st.composite
def psd(draw, n, rank=None):
    r = draw(st.integers(0, n)) if rank is None else rank
    seed = draw(st.integers(0, 2**64 - 1))
    return gen_psd(SplitMix64(seed), n, r, 4)


@pytest.fixture
def rng():
    return SplitMix64(20261016)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
