import pytest

from tensaheyt.examples import build_ej2, build_frame_algebra, corpus, extreme_chain, iter_frames, product
from tensaheyt.filters import box_N, check_normality
from tensaheyt.lattices import build_lattice, heyting_implication, principal_filter
from tensaheyt.tense import (
    TenseHAlgebra,
    check_axioms,
    check_classical_definability,
    check_derived_laws,
    check_prime_preimages,
    filter_name,
    is_tense_h_algebra,
    preimage,
    relational_operators,
)
from tensaheyt.types import DegenerateAlgebra, FormatError

CORPUS = corpus()
THREE_POINT_FRAMES = [(name, A) for name, A in iter_frames(3) if name.startswith("frame:3:")]


def names(A, table):
    return [A.name(int(x)) for x in table]


@pytest.mark.parametrize("name, A", CORPUS, ids=[name for name, _ in CORPUS])
def test_library_algebras_satisfy_the_axioms(name, A):
    assert check_axioms(A).passed
    assert check_derived_laws(A).passed
    assert check_prime_preimages(A).passed


def test_every_three_point_frame_algebra():
    assert len(THREE_POINT_FRAMES) == 512

    for name, A in THREE_POINT_FRAMES:
        assert A.n == 8, name
        box_N(A)
        assert check_normality(A).passed, name
        assert check_axioms(A).passed, name
        assert check_derived_laws(A).passed, name


def test_ej2_tables():
    A = build_ej2()

    assert names(A, A.g) == ["d", "d", "d", "b", "d", "0"]
    assert names(A, A.h) == ["1", "1", "c", "c", "0", "0"]
    assert names(A, A.f) == ["1", "a", "c", "a", "a", "a"]
    assert names(A, A.p) == ["1", "1", "b", "b", "0", "0"]
    assert A.op("g", A.index("c")) == A.index("b")


def test_ej2_is_not_classical():
    report = check_classical_definability(build_ej2())

    assert str(report["CLASSICAL-f"]) == "CLASSICAL-f FAIL x=b"
    assert str(report["CLASSICAL-p"]) == "CLASSICAL-p FAIL x=b"


def test_boolean_algebras_are_classical():
    two = extreme_chain(2)

    assert check_classical_definability(product(two, two)).passed
    assert check_classical_definability(build_frame_algebra(2, [(0, 1), (1, 1)])).passed


def test_extreme_chain_tables():
    A = extreme_chain(3)

    assert names(A, A.g) == ["1", "1", "0"]
    assert names(A, A.f) == ["1", "0", "0"]
    assert list(A.g) == list(A.h)
    assert list(A.f) == list(A.p)


def test_one_point_frame_without_relation():
    A = build_frame_algebra(1, [])

    assert names(A, A.g) == ["{}", "{}"]
    assert names(A, A.h) == ["{}", "{}"]
    assert names(A, A.f) == ["{0}", "{0}"]
    assert names(A, A.p) == ["{0}", "{0}"]


def test_op_lines():
    assert extreme_chain(2).op_lines() == [
        "op g: 0->1 1->0",
        "op h: 0->1 1->0",
        "op f: 0->1 1->0",
        "op p: 0->1 1->0",
    ]


def test_relational_operators():
    # a single arrow 0 -> 1, evaluated on U = {1}
    images = relational_operators([0b10], succ=[0b10, 0b00], pred=[0b00, 0b01], points=2)

    assert images == {"g": [0b00], "h": [0b10], "f": [0b10], "p": [0b11]}


def test_preimage_and_filter_name():
    A = build_ej2()
    d = A.index("d")

    assert filter_name(A, principal_filter(A, d)) == "^d"
    # g sends everything except c and 1 to d
    assert preimage(A, "g", A.up(d)) == sum(1 << A.index(x) for x in ("0", "a", "b", "d"))


class TestBrokenAlgebras:
    """Violations come back as findings, never as exceptions."""

    def test_g_of_top(self):
        A = extreme_chain(2).replace(g=[1, 1])
        report = check_axioms(A)

        assert not report.passed
        assert str(report["T1"]) == "T1 FAIL x=1"
        assert not is_tense_h_algebra(A)

    def test_f_of_bottom(self):
        A = extreme_chain(2).replace(p=[0, 0])

        assert str(check_axioms(A)["T2"]) == "T2 FAIL x=0"

    def test_non_antitone_operators(self):
        A = extreme_chain(3)
        broken = A.replace(g=list(range(3)), h=list(range(3)))

        assert not check_axioms(broken).passed
        assert not check_derived_laws(broken).passed

    def test_report_order(self):
        report = check_axioms(build_ej2())

        assert [finding.check for finding in report] == [f"T{i}" for i in range(1, 9)]
        assert [finding.check for finding in check_derived_laws(build_ej2())] == [
            f"T{i}" for i in range(9, 15)
        ]


class TestConstruction:
    """Shape errors in the operator tables."""

    def test_degenerate(self):
        H = heyting_implication(build_lattice(["0"], [[True]]))

        with pytest.raises(DegenerateAlgebra):
            TenseHAlgebra(H, [0], [0], [0], [0])

    def test_wrong_length(self):
        A = extreme_chain(2)

        with pytest.raises(FormatError, match="operator g needs 2 entries"):
            A.replace(g=[1])

    def test_leaves_carrier(self):
        with pytest.raises(FormatError, match="leaves the carrier"):
            extreme_chain(2).replace(f=[1, 2])

    def test_unknown_operator(self):
        with pytest.raises(FormatError, match="unknown operators"):
            extreme_chain(2).replace(q=[0, 0])
