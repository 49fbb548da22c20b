import numpy as np
import pytest

from tensaheyt.duality import (
    SpaceMorphism,
    TenseHSpace,
    check_epsilon,
    check_functoriality,
    check_morphism_equivalence,
    check_naturality,
    check_operator_recovery,
    check_relation_forms,
    check_separation,
    check_sigma,
    check_space_axioms,
    compose,
    dual_algebra,
    dual_morphism,
    dual_space,
    dual_space_morphism,
    epsilon,
    heyting_morphism_witness,
    is_heyting_morphism,
    is_space_isomorphism,
    relation_fg,
    relation_ph,
    require_space_axioms,
    sigma,
    space_identity,
    spectrum,
)
from tensaheyt.examples import (
    build_ej2,
    build_frame_algebra,
    corpus,
    extreme_chain,
    product,
    projections,
    relation_from_mask,
)
from tensaheyt.filters import TenseFilter, quotient
from tensaheyt.homomorphisms import AlgebraMorphism, identity
from tensaheyt.lattices import FinitePoset, principal_filter
from tensaheyt.types import FormatError, NotAHomomorphism, SpaceAxiomViolation

CORPUS = corpus(frame_points=2)
IDS = [name for name, _ in CORPUS]


def space(names, covers, pairs):
    poset = FinitePoset.from_covers(names, [(names.index(a), names.index(b)) for a, b in covers])
    relation = np.zeros((len(names), len(names)), dtype=bool)
    for a, b in pairs:
        relation[names.index(a), names.index(b)] = True

    return TenseHSpace(poset, relation)


def arrows(X):
    return [f"{X.name(x)}->{X.name(y)}" for x, y in X.relation_pairs()]


@pytest.fixture
def ej2():
    return build_ej2()


@pytest.fixture
def two():
    return extreme_chain(2)


@pytest.fixture
def square(two):
    return product(two, two)


class TestDualSpace:
    """Prime filter spaces of library algebras."""

    def test_ej2(self, ej2):
        X = dual_space(ej2)

        assert X.names == ("^a", "^b", "^d")
        assert X.poset.cover_pairs() == [(X.index("^d"), X.index("^b"))]
        assert arrows(X) == ["^b->^a", "^b->^d", "^d->^a", "^d->^b"]

    def test_ej2_upsets(self, ej2):
        X = dual_space(ej2)

        assert X.upsets == (0, 1, 2, 3, 6, 7)
        assert [X.poset.set_name(U) for U in X.upsets] == [
            "{}",
            "{^a}",
            "{^b}",
            "{^a,^b}",
            "{^b,^d}",
            "{^a,^b,^d}",
        ]

    def test_product(self, square):
        X = dual_space(square)

        assert X.names == ("^(0,1)", "^(1,0)")
        assert X.poset.cover_pairs() == []
        assert X.R.tolist() == [[True, False], [False, True]]

    def test_extreme_chains(self):
        X = dual_space(extreme_chain(2))
        assert X.names == ("^1",)
        assert X.R.tolist() == [[True]]

        Y = dual_space(extreme_chain(3))
        assert Y.names == ("^m", "^1")
        assert Y.poset.cover_pairs() == [(1, 0)]
        assert Y.R.all()

    def test_spectrum(self, ej2):
        assert [len(s) for s in spectrum(ej2)] == [3, 4, 2]

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_relation_forms(self, name, A):
        assert (relation_fg(A) == relation_ph(A)).all()
        assert check_relation_forms(A).passed
        assert check_operator_recovery(A).passed
        assert check_space_axioms(dual_space(A)).passed

    def test_relation_form_names(self, ej2):
        checks = [finding.check for finding in check_relation_forms(ej2)]

        assert checks == ["R-FORMS", "CONVEX", "COMPOSE-g", "COMPOSE-h", "COMPOSE-f", "COMPOSE-p"]


class TestSpaceAxioms:
    """Convexity of R-images and closure of up-sets under the operators."""

    def test_s3_failure(self):
        X = space(["x", "y"], [("x", "y")], [("y", "y")])
        report = check_space_axioms(X)

        assert report["S1"].passed
        assert report["S2"].passed
        assert str(report["S3"]) == "S3 FAIL op=f U={y}"

        with pytest.raises(SpaceAxiomViolation, match=r"S3 FAIL op=f U=\{y\}") as info:
            require_space_axioms(X)

        assert info.value.clause == "S3"

    def test_s2_failure(self):
        X = space(["a", "b", "c"], [("a", "b"), ("b", "c")], [("a", "a"), ("a", "c")])

        assert str(check_space_axioms(X)["S2"]) == "S2 FAIL x=a y=b"

        with pytest.raises(SpaceAxiomViolation, match="S2"):
            dual_algebra(X)

    def test_relation_shape(self):
        poset = FinitePoset(["u"], [[True]])

        with pytest.raises(FormatError, match="relation must be 1x1"):
            TenseHSpace(poset, np.zeros((2, 2), dtype=bool))


class TestDualAlgebra:
    """Up-set algebras and the two round trips."""

    @pytest.mark.parametrize("points", [1, 2])
    def test_frames_match_powerset_algebras(self, points):
        names = [str(i) for i in range(points)]
        for mask in range(1 << (points * points)):
            pairs = relation_from_mask(points, mask)
            relation = [[(x, y) in pairs for y in range(points)] for x in range(points)]
            X = TenseHSpace(FinitePoset(names, np.eye(points, dtype=bool)), relation)

            D = dual_algebra(X)
            A = build_frame_algebra(points, pairs)

            assert D.names == A.names
            for u in ("g", "h", "f", "p"):
                assert list(D.ops[u]) == list(A.ops[u])

    def test_ej2_sigma(self, ej2):
        k = sigma(ej2)

        assert k.mapping == (0, 1, 2, 3, 4, 5)
        assert k.target.name(k(ej2.index("d"))) == "{^b,^d}"

    @pytest.mark.parametrize("name, A", CORPUS, ids=IDS)
    def test_round_trips(self, name, A):
        assert check_sigma(A).passed
        X = dual_space(A)
        assert check_epsilon(X).passed
        assert is_space_isomorphism(epsilon(X))
        assert check_separation(X).passed

    def test_sigma_report_names(self, two):
        checks = [finding.check for finding in check_sigma(two)]

        assert checks[:3] == ["SIGMA-BIJECTIVE", "SIGMA-bot", "SIGMA-top"]
        assert checks[-1] == "SIGMA-p"

    def test_epsilon_of_chain_space(self):
        X = space(["x", "y"], [("x", "y")], [("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")])
        k = epsilon(X)

        assert [finding.check for finding in check_epsilon(X)] == [
            "EPSILON-BIJECTIVE",
            "EPSILON-ORDER",
            "EPSILON-R",
        ]
        assert k.is_bijective()


class TestSeparation:
    """Every pair outside R is separated by an up-set."""

    def test_ej2(self, ej2):
        report = check_separation(dual_space(ej2))

        assert len(report) == 5
        assert report.passed
        assert all(dict(finding.witness)["by"] in ("f", "g") for finding in report)

    def test_complete_relation(self):
        X = dual_space(extreme_chain(3))
        report = check_separation(X)

        assert [str(finding) for finding in report] == ["SEPARATE PASS"]


class TestMorphisms:
    """Heyting morphisms, their conditions and the dual functors."""

    def test_identity(self, ej2):
        X = dual_space(ej2)
        k = space_identity(X)

        assert is_heyting_morphism(k)
        assert check_morphism_equivalence(k).passed

    def test_broken_swap(self):
        X = space(["u", "v"], [], [("u", "v")])
        k = SpaceMorphism.from_names(X, X, {"u": "v", "v": "u"})
        report = check_morphism_equivalence(k)

        assert str(report["m1"]) == "m1 FAIL x=u y=v"
        assert not report["M1"].passed
        assert not report.passed

        with pytest.raises(NotAHomomorphism):
            dual_space_morphism(k)

    def test_not_heyting(self):
        point = space(["o"], [], [])
        chain = space(["x", "y"], [("x", "y")], [])
        k = SpaceMorphism(point, chain, (0,))

        assert heyting_morphism_witness(k) == {"x": "o"}

        with pytest.raises(NotAHomomorphism):
            check_morphism_equivalence(k)

    def test_collapse_to_point(self):
        chain = space(["x", "y"], [("x", "y")], [])
        point = space(["o"], [], [])
        k = SpaceMorphism(chain, point, (0, 0))

        assert is_heyting_morphism(k)
        assert check_morphism_equivalence(k).passed

    def test_dual_of_diagonal(self, two, square):
        diagonal = AlgebraMorphism(two, square, (0, 3))
        k = dual_morphism(diagonal)

        assert k.source.names == ("^(0,1)", "^(1,0)")
        assert k.target.names == ("^1",)
        assert k.mapping == (0, 0)
        assert check_morphism_equivalence(k).passed

    def test_dual_of_non_homomorphism(self, two, square):
        with pytest.raises(NotAHomomorphism):
            dual_morphism(AlgebraMorphism(square, two, (1, 1, 1, 1)))

    def test_functoriality_and_naturality(self, two, square):
        diagonal = AlgebraMorphism(two, square, (0, 3))
        first_projection = AlgebraMorphism(square, two, (0, 0, 1, 1))

        assert check_functoriality(diagonal, first_projection).passed
        assert check_naturality(diagonal).passed
        assert check_naturality(first_projection).passed
        assert check_naturality(identity(build_ej2())).passed

    def test_dual_of_quotient_is_an_embedding(self, two, square):
        f = TenseFilter(principal_filter(square, square.index("(1,0)")))
        Q, q = quotient(square, f)
        k = dual_morphism(q)

        assert Q.n == 2
        assert len(set(k.mapping)) == len(k.mapping)
        assert [k.target.name(y) for y in k.mapping] == ["^(1,0)"]
        assert check_morphism_equivalence(k).passed

        diagonal = AlgebraMorphism(two, square, (0, 3))
        assert check_functoriality(diagonal, q).passed
        assert check_functoriality(q, identity(Q)).passed
        assert check_naturality(q).passed

    def test_dual_of_trivial_quotient_is_bijective(self, ej2):
        Q, q = quotient(ej2, TenseFilter(principal_filter(ej2, ej2.top)))
        k = dual_morphism(q)

        assert k.is_bijective()
        assert check_naturality(q).passed

    def test_duals_of_projections(self, two, square):
        first, second = projections(two, two, square)
        diagonal = AlgebraMorphism(two, square, (0, 3))
        images = []

        for p in (first, second):
            k = dual_morphism(p)
            assert len(k.source.names) == 1
            images.append(k.target.name(k.mapping[0]))

            assert check_morphism_equivalence(k).passed
            assert check_functoriality(diagonal, p).passed
            assert check_naturality(p).passed

        assert sorted(images) == ["^(0,1)", "^(1,0)"]

    def test_dual_space_morphism(self, square):
        X = dual_space(square)
        swap = SpaceMorphism(X, X, (1, 0))
        k = dual_space_morphism(swap)

        assert k.is_bijective()
        assert k.source.names == k.target.names

    def test_compose(self, two, square):
        X = dual_space(square)
        swap = SpaceMorphism(X, X, (1, 0))

        assert compose(swap, swap).mapping == (0, 1)

        with pytest.raises(TypeError):
            compose(swap, identity(two))

        with pytest.raises(FormatError, match="do not compose"):
            compose(swap, space_identity(dual_space(two)))

    def test_from_names(self):
        X = space(["u", "v"], [], [])

        with pytest.raises(FormatError, match="misses v"):
            SpaceMorphism.from_names(X, X, {"u": "u"})

        with pytest.raises(FormatError, match="unknown points w"):
            SpaceMorphism.from_names(X, X, {"u": "u", "v": "v", "w": "u"})

        with pytest.raises(FormatError, match="leaves the target"):
            SpaceMorphism(X, X, (0, 2))
