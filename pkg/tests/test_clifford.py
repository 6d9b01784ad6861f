import pytest

from psindex.wick.clifford import (CliffordElement, pi_element, supertrace, top_reversed)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_normalizations(n):
    assert supertrace(top_reversed(n)) == (-1) ** n
    assert supertrace(pi_element(n)) == 1
    assert supertrace(CliffordElement.one(n)) == 0


def test_relations():
    n = 2
    psi, bar = CliffordElement.psi, CliffordElement.psibar
    for i in (1, 2):
        for j in (1, 2):
            anti = psi(n, i) * bar(n, j) + bar(n, j) * psi(n, i)
            want = CliffordElement.one(n) if i == j else CliffordElement(n)
            assert anti == want
    assert (psi(n, 1) * psi(n, 1)) == CliffordElement(n)
    assert (psi(n, 1) * psi(n, 2) + psi(n, 2) * psi(n, 1)) == CliffordElement(n)


def test_associative():
    n = 3
    a = CliffordElement.word(n, [("bar", 2), ("psi", 1)]) + CliffordElement.psi(n, 3)
    b = CliffordElement.word(n, [("psi", 2), ("bar", 1)]).scale(2.0)
    c = CliffordElement.word(n, [("bar", 3), ("psi", 2), ("bar", 1)])
    assert (a * b) * c == a * (b * c)


def test_lower_monomials_have_no_supertrace():
    n = 2
    w = CliffordElement.word(n, [("psi", 1), ("bar", 1)])
    assert supertrace(w) == 0
