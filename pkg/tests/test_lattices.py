import numpy as np
import pytest

from tensaheyt.examples import build_chain, build_ej2, powerset_heyting
from tensaheyt.lattices import (
    Filter,
    FinitePoset,
    build_lattice,
    enumerate_filters,
    enumerate_prime_filters,
    filter_from_elements,
    filter_ideal_separation,
    generator,
    heyting_implication,
    ideal_from_elements,
    is_filter,
    is_ideal,
    is_prime_filter,
    principal_filter,
    principal_ideal,
)
from tensaheyt.types import CarrierTooLarge, FormatError, NotALattice, NotAPartialOrder, NotDisjoint, NotDistributive


@pytest.fixture
def ej2():
    return build_ej2()


def bits(A, *names):
    return sum(1 << A.index(name) for name in names)


class TestFinitePoset:
    """Order matrices, principal sets and up-set enumeration."""

    def test_from_covers_closes_transitively(self):
        P = FinitePoset.from_covers(["0", "m", "1"], [(0, 1), (1, 2)])

        assert P.le(0, 2)
        assert not P.le(2, 0)
        assert P.cover_pairs() == [(0, 1), (1, 2)]

    def test_principal_sets(self):
        P = FinitePoset.from_covers(["0", "m", "1"], [(0, 1), (1, 2)])

        assert P.up(1) == 0b110
        assert P.down(1) == 0b011
        assert P.up_closure(0b010) == 0b110
        assert P.is_upset(0b110)
        assert not P.is_upset(0b010)
        assert P.is_downset(0b001)

    def test_upsets_of_chain(self):
        P = FinitePoset.from_covers(["0", "m", "1"], [(0, 1), (1, 2)])

        assert P.upsets() == [0b000, 0b100, 0b110, 0b111]

    def test_upsets_of_antichain(self):
        P = FinitePoset(["u", "v"], np.eye(2, dtype=bool))

        assert P.upsets() == [0, 1, 2, 3]

    def test_upsets_cap(self, monkeypatch):
        monkeypatch.setenv("TENSAHEYT_MAX_ELEMENTS", "3")
        P = FinitePoset.from_covers(["0", "m", "1"], [(0, 1), (1, 2)])

        with pytest.raises(CarrierTooLarge):
            P.upsets()

    def test_set_name(self):
        P = FinitePoset(["u", "v"], np.eye(2, dtype=bool))

        assert P.set_name(0) == "{}"
        assert P.set_name(3) == "{u,v}"

    def test_not_reflexive(self):
        with pytest.raises(NotAPartialOrder, match="reflexive"):
            FinitePoset(["u", "v"], [[True, False], [False, False]])

    def test_not_antisymmetric(self):
        with pytest.raises(NotAPartialOrder, match="antisymmetric"):
            FinitePoset(["u", "v"], np.ones((2, 2), dtype=bool))

    def test_not_transitive(self):
        leq = np.eye(3, dtype=bool)
        leq[0, 1] = leq[1, 2] = True

        with pytest.raises(NotAPartialOrder, match="transitive"):
            FinitePoset(["x", "y", "z"], leq)

    def test_bad_names(self):
        with pytest.raises(FormatError):
            FinitePoset(["u", "u"], np.eye(2, dtype=bool))

        with pytest.raises(FormatError):
            FinitePoset(["u v"], np.eye(1, dtype=bool))

    def test_unknown_element(self):
        P = FinitePoset(["u"], np.eye(1, dtype=bool))

        with pytest.raises(FormatError, match="unknown element"):
            P.index("w")


class TestLattices:
    """Meets, joins and the Heyting implication."""

    def test_ej2_operations(self, ej2):
        i = ej2.index

        assert ej2.join(i("a"), i("b")) == i("c")
        assert ej2.meet(i("c"), i("d")) == i("b")
        assert ej2.meet(i("a"), i("d")) == i("0")
        assert ej2.join(i("a"), i("d")) == i("1")
        assert ej2.bot == i("0")
        assert ej2.top == i("1")

    def test_ej2_negation(self, ej2):
        negated = {x: ej2.name(ej2.neg(ej2.index(x))) for x in ej2.names}

        assert negated == {"0": "1", "a": "d", "b": "a", "c": "0", "d": "a", "1": "0"}

    def test_ej2_is_not_boolean(self, ej2):
        b = ej2.index("b")

        assert ej2.join(b, ej2.neg(b)) != ej2.top

    def test_residuation(self, ej2):
        assert ej2.residuation_witness() is None
        assert ej2.check_residuation()

    def test_iff(self, ej2):
        i = ej2.index

        assert ej2.iff(i("a"), i("a")) == i("1")
        assert ej2.iff(i("a"), i("d")) == i("0")

    def test_meet_all_and_join_all(self, ej2):
        i = ej2.index

        assert ej2.meet_all([]) == ej2.top
        assert ej2.join_all([]) == ej2.bot
        assert ej2.meet_all([i("c"), i("d")]) == i("b")

    def test_join_irreducibles(self, ej2):
        assert [ej2.name(x) for x in ej2.join_irreducibles()] == ["a", "b", "d"]

    def test_chain(self):
        H = build_chain(3)
        m = H.index("m")

        assert H.names == ("0", "m", "1")
        assert H.neg(m) == H.bot
        assert H.implies(H.top, m) == m
        assert H.implies(m, H.bot) == H.bot

    def test_powerset(self):
        H = powerset_heyting(2)

        assert H.names == ("{}", "{0}", "{1}", "{0,1}")
        assert H.neg(1) == 2
        assert H.implies(3, 1) == 1
        assert H.is_distributive()

    def test_no_join(self):
        P = FinitePoset.from_covers(["0", "a", "b"], [(0, 1), (0, 2)])

        with pytest.raises(NotALattice, match="a and b have no join"):
            build_lattice(P)

    def test_not_distributive(self):
        P = FinitePoset.from_covers(
            ["0", "a", "b", "c", "1"], [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
        )

        with pytest.raises(NotDistributive):
            heyting_implication(build_lattice(P))

    def test_build_from_names(self):
        L = build_lattice(["0", "1"], [[True, True], [False, True]])

        assert (L.bot, L.top) == (0, 1)


class TestFilters:
    """Filters, ideals and prime filters on ej2."""

    def test_principal(self, ej2):
        assert principal_filter(ej2, ej2.index("d")) == Filter(bits(ej2, "d", "1"))
        assert principal_ideal(ej2, ej2.index("c")).members == bits(ej2, "0", "a", "b", "c")

    def test_is_filter_and_is_ideal(self, ej2):
        assert is_filter(ej2, bits(ej2, "b", "c", "d", "1"))
        assert not is_filter(ej2, bits(ej2, "c", "d", "1"))
        assert not is_filter(ej2, bits(ej2, "a", "d", "1"))
        assert not is_filter(ej2, 0)
        assert is_ideal(ej2, bits(ej2, "0", "b"))
        assert not is_ideal(ej2, bits(ej2, "0", "a", "b"))

    def test_generated(self, ej2):
        i = ej2.index
        f = filter_from_elements(ej2, [i("c"), i("d")])

        assert f == principal_filter(ej2, i("b"))
        assert generator(ej2, f) == i("b")
        assert ideal_from_elements(ej2, [i("a"), i("b")]).members == ej2.down(i("c"))

    def test_enumerate_filters(self, ej2):
        found = enumerate_filters(ej2)

        assert len(found) == ej2.n
        assert [generator(ej2, f) for f in found] == list(range(ej2.n))

    def test_prime_filters(self, ej2):
        primes = enumerate_prime_filters(ej2)

        assert [ej2.name(generator(ej2, f)) for f in primes] == ["a", "b", "d"]
        assert not is_prime_filter(ej2, principal_filter(ej2, ej2.index("c")))
        assert not is_prime_filter(ej2, principal_filter(ej2, ej2.bot))

    def test_separation(self, ej2):
        i = ej2.index

        found = filter_ideal_separation(
            ej2, principal_filter(ej2, i("d")), principal_ideal(ej2, i("a"))
        )

        assert found == principal_filter(ej2, i("b"))

        found = filter_ideal_separation(
            ej2, principal_filter(ej2, i("c")), principal_ideal(ej2, i("d"))
        )

        assert found == principal_filter(ej2, i("a"))

    def test_separation_needs_disjoint_sets(self, ej2):
        i = ej2.index

        with pytest.raises(NotDisjoint):
            filter_ideal_separation(
                ej2, principal_filter(ej2, i("b")), principal_ideal(ej2, i("c"))
            )

    def test_filter_membership(self, ej2):
        f = principal_filter(ej2, ej2.index("d"))

        assert ej2.index("1") in f
        assert ej2.index("c") not in f
        assert len(f) == 2
        assert f.elements() == [ej2.index("d"), ej2.index("1")]
