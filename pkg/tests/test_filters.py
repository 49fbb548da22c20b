import numpy as np
import pytest

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.examples import build_ej2, corpus, extreme_chain, product
from tensaheyt.filters import (
    Congruence,
    TenseFilter,
    box_N,
    box_N_iterates,
    box_n_table,
    box_u,
    check_normality,
    compatibility_witness,
    congruence_from_filter,
    congruence_lattice,
    enumerate_tense_filters,
    filter_from_congruence,
    filter_label,
    generated_tense_filter,
    is_congruence,
    is_simple,
    is_subdirectly_irreducible,
    is_tense_filter,
    least_iterate,
    quotient,
    stable_box_N,
)
from tensaheyt.homomorphisms import is_homomorphism
from tensaheyt.lattices import Filter, principal_filter
from tensaheyt.tense import check_axioms
from tensaheyt.types import DegenerateAlgebra, NotACongruence, NotATenseFilter

CORPUS = corpus(frame_points=2)
IDS = [name for name, _ in CORPUS]
SMALL = [(name, A) for name, A in CORPUS if A.n <= 6]


@pytest.fixture
def ej2():
    return build_ej2()


@pytest.fixture
def square():
    two = extreme_chain(2)
    return product(two, two)


def partitions(n):
    """Every partition of range(n) as least-member class ids."""

    def extend(prefix):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        x = len(prefix)
        for c in sorted(set(prefix)):
            yield from extend([*prefix, c])
        yield from extend([*prefix, x])

    yield from extend([])


def test_partitions_helper():
    assert sum(1 for _ in partitions(4)) == 15
    assert sum(1 for _ in partitions(6)) == 203


class TestBoxN:
    """The operator [N] and its meet-iterates."""

    def test_ej2_table(self, ej2):
        N = box_N(ej2)

        assert [ej2.name(N(x)) for x in range(ej2.n)] == ["0", "0", "0", "0", "a", "1"]
        assert list(N.table) == list(box_n_table(ej2))

    def test_per_operator(self, ej2):
        N = box_N(ej2)

        assert list(N.per_operator["g"]) == list(ej2.neg_table[ej2.g])
        assert list(box_u(ej2, "h")) == list(ej2.neg_table[ej2.h])

    def test_product_is_identity(self, square):
        assert list(box_n_table(square)) == [0, 1, 2, 3]

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_meet_form_matches_closed_form(self, name, A):
        box_N(A)
        assert check_normality(A).passed

    def test_iterates(self, ej2):
        dd = ej2.index("d")

        assert box_N_iterates(ej2, dd, 0) == dd
        assert box_N_iterates(ej2, dd, 1) == ej2.bot
        assert box_N_iterates(ej2, ej2.top, 5) == ej2.top
        assert least_iterate(ej2, dd, ej2.bot) == 1
        assert least_iterate(ej2, dd, dd) == 0
        assert least_iterate(ej2, ej2.top, ej2.bot) is None

    def test_negative_k(self, ej2):
        with pytest.raises(ValueError):
            box_N_iterates(ej2, 0, -1)

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_stable_iterate_is_a_fixed_point(self, name, A):
        stable = stable_box_N(A)

        for a in range(A.n):
            assert box_N_iterates(A, a, A.n) == stable[a]

    def test_not_normal(self):
        broken = extreme_chain(3).replace(g=[2, 2, 2])
        report = check_normality(broken)

        assert not check_axioms(broken).passed
        assert str(report["NORMAL-top"]) == "NORMAL-top FAIL x=1"


class TestTenseFilters:
    """Tense filters and the four tests that characterize them."""

    def test_ej2(self, ej2):
        found = enumerate_tense_filters(ej2)

        assert [filter_label(ej2, f) for f in found] == ["A", "{1}"]

    def test_ej2_failure_witness(self, ej2):
        report = is_tense_filter(ej2, principal_filter(ej2, ej2.index("d")))

        assert not report.passed
        assert str(report["BOX-N"]) == "BOX-N FAIL x=d"
        assert not report["GALOIS"].passed

    def test_not_a_filter(self, ej2):
        with pytest.raises(NotATenseFilter):
            is_tense_filter(ej2, Filter(1 << ej2.index("a")))

    def test_product(self, square):
        assert len(enumerate_tense_filters(square)) == 4

    def test_generated(self, ej2):
        assert filter_label(ej2, generated_tense_filter(ej2, [ej2.index("d")])) == "A"
        assert filter_label(ej2, generated_tense_filter(ej2, [])) == "{1}"
        assert filter_label(ej2, generated_tense_filter(ej2, [ej2.top])) == "{1}"

    @pytest.mark.parametrize("name, A", SMALL, ids=[name for name, _ in SMALL])
    def test_generated_is_least(self, name, A):
        tense = enumerate_tense_filters(A)

        for bits in bitsets.subsets(bitsets.full(A.n)):
            xs = list(bitsets.members_of(bits))
            above = [f.members for f in tense if bitsets.is_subset(bits, f.members)]
            expected = bitsets.full(A.n)
            for members in above:
                expected &= members

            assert generated_tense_filter(A, xs).members == expected

    def test_membership(self, ej2):
        f = TenseFilter(principal_filter(ej2, ej2.top))

        assert ej2.top in f
        assert ej2.index("d") not in f
        assert len(f) == 1


class TestCongruences:
    """Tense congruences agree with tense filters."""

    def test_ej2(self, ej2):
        lattice = congruence_lattice(ej2)

        assert len(lattice) == 2
        assert [len(theta) for theta in lattice.congruences] == [1, 6]
        assert lattice.order.tolist() == [[True, False], [True, True]]

    def test_product(self, square):
        lattice = congruence_lattice(square)

        assert len(lattice) == 4
        assert not is_simple(square)
        assert not is_subdirectly_irreducible(square)

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_partition_scan_agrees(self, name, A):
        if A.n > d.max_partition_elements():
            pytest.skip("too many partitions")

        compatible = {
            theta
            for theta in (Congruence(classes) for classes in partitions(A.n))
            if is_congruence(A, theta)
        }

        assert compatible == set(congruence_lattice(A).congruences)

    def test_incompatible_partition(self, ej2):
        # merge d with 1 and nothing else
        theta = Congruence((0, 1, 2, 3, 4, 4))

        assert compatibility_witness(ej2, theta) is not None
        with pytest.raises(NotACongruence):
            filter_from_congruence(ej2, theta)

    def test_wrong_size(self, ej2):
        with pytest.raises(NotACongruence):
            filter_from_congruence(ej2, Congruence((0, 0)))

    def test_from_non_tense_filter(self, ej2):
        with pytest.raises(NotATenseFilter):
            congruence_from_filter(ej2, principal_filter(ej2, ej2.index("d")))

    def test_congruence_helpers(self):
        theta = Congruence.from_relation(
            np.array([[1, 1, 0], [1, 1, 0], [0, 0, 1]], dtype=bool)
        )

        assert theta.classes == (0, 0, 2)
        assert theta.related(0, 1)
        assert not theta.related(1, 2)
        assert theta.blocks() == [0b011, 0b100]
        assert Congruence((0, 1, 2)).refines(theta)
        assert not theta.refines(Congruence((0, 1, 2)))


class TestSimplicity:
    """Simple and subdirectly irreducible algebras."""

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_extreme_chains_are_simple(self, n):
        A = extreme_chain(n)

        assert is_simple(A)
        assert is_subdirectly_irreducible(A)

    def test_ej2(self, ej2):
        assert is_simple(ej2)
        assert is_subdirectly_irreducible(ej2)

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_simple_iff_two_tense_filters(self, name, A):
        assert is_simple(A) == (len(enumerate_tense_filters(A)) == 2)

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_simple_iff_stable_iterates_vanish(self, name, A):
        stable = stable_box_N(A)

        assert is_simple(A) == all(int(stable[a]) == A.bot for a in range(A.n) if a != A.top)

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_irreducible_iff_least_nontrivial_filter(self, name, A):
        proper = [f.members for f in enumerate_tense_filters(A) if f.members != 1 << A.top]
        meet = bitsets.full(A.n)
        for members in proper:
            meet &= members

        assert is_subdirectly_irreducible(A) == (meet != 1 << A.top)


class TestQuotients:
    """Quotients by tense filters and their canonical maps."""

    def test_product_by_first_coordinate(self, square):
        f = TenseFilter(principal_filter(square, square.index("(1,0)")))
        Q, k = quotient(square, f)

        assert Q.names == ("[(0,0)]", "[(1,0)]")
        assert k.mapping == (0, 0, 1, 1)
        assert is_homomorphism(k)
        assert check_axioms(Q).passed

    def test_by_trivial_filter(self, ej2):
        Q, k = quotient(ej2, TenseFilter(principal_filter(ej2, ej2.top)))

        assert Q.names == ("[0]", "[a]", "[b]", "[c]", "[d]", "[1]")
        assert k.is_bijective()
        assert is_homomorphism(k)

    def test_by_everything(self, ej2):
        with pytest.raises(DegenerateAlgebra):
            quotient(ej2, TenseFilter(principal_filter(ej2, ej2.bot)))
