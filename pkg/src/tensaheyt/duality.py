# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

"""
Finite duality between tense H-algebras and tense H-spaces.

A finite tense H-space is a poset with a binary relation ``R``; every subset
is clopen, so the clopen up-sets are simply the up-sets. The spectrum functor
sends an algebra to its prime filters ordered by inclusion, related by
``(S, T) in R_A`` iff ``f^-1(S) <= A - T <= g^-1(S)``; the other direction
takes the up-sets with g_R, h_R, f_R, p_R. ``sigma`` and ``epsilon`` are the
two round-trip isomorphisms and are verified, not assumed.

Relation composition follows ``(S, T) in (A o B)`` iff some ``Q`` has
``(S, Q) in A`` and ``(Q, T) in B``; it is computed as a boolean matrix product.
"""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import numpy.typing as npt

import tensaheyt.deployment as d
from tensaheyt import bitsets
from tensaheyt.constraints import ensure
from tensaheyt.homomorphisms import (
    AlgebraMorphism,
    check_homomorphism,
    identity,
    require_homomorphism,
)
from tensaheyt.homomorphisms import compose as compose_algebra_morphisms
from tensaheyt.lattices import (
    Filter,
    FiniteLattice,
    FinitePoset,
    HeytingAlgebra,
    enumerate_prime_filters,
    frozen,
)
from tensaheyt.reports import Finding, Report, failing, from_witness, passing
from tensaheyt.tense import (
    TenseHAlgebra,
    filter_name,
    first_witness,
    relational_operators,
)
from tensaheyt.types import (
    OPERATORS,
    Bits,
    Element,
    EquivalenceMismatch,
    FormatError,
    IsomorphismFailure,
    NotAHomomorphism,
    Operator,
    SpaceAxiomViolation,
)

LOGGER = d.LOGGER

BoolMatrix = npt.NDArray[np.bool_]


def disjoint_rows(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """``out[i, j]`` iff row ``i`` of ``a`` and row ``j`` of ``b`` share no column."""
    return (a.astype(np.int64) @ b.T.astype(np.int64)) == 0


def relation_product(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


class TenseHSpace:
    """A finite poset with a binary relation ``R`` (``R[x, y]`` iff ``(x, y) in R``)."""

    def __init__(self, poset: FinitePoset, relation: npt.ArrayLike) -> None:
        self.poset = poset
        self.R: BoolMatrix = frozen(relation, bool)

        ensure(
            self.R.shape == (poset.n, poset.n),
            FormatError,
            f"relation must be {poset.n}x{poset.n}, got {self.R.shape}",
        )

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def names(self) -> tuple[str, ...]:
        return self.poset.names

    @property
    def leq(self) -> BoolMatrix:
        return self.poset.leq

    def name(self, x: Element) -> str:
        return self.poset.name(x)

    def index(self, name: str) -> Element:
        return self.poset.index(name)

    @cached_property
    def succ(self) -> tuple[Bits, ...]:
        return tuple(bitsets.from_mask(row) for row in self.R)

    @cached_property
    def pred(self) -> tuple[Bits, ...]:
        return tuple(bitsets.from_mask(col) for col in self.R.T)

    @cached_property
    def upsets(self) -> tuple[Bits, ...]:
        return tuple(self.poset.upsets())

    def operators_on(self, carrier: Sequence[Bits]) -> Mapping[Operator, list[Bits]]:
        return relational_operators(carrier, self.succ, self.pred, self.n)

    def relation_pairs(self) -> list[tuple[Element, Element]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.R)]

    def __repr__(self) -> str:
        pairs = " ".join(f"{self.name(x)}->{self.name(y)}" for x, y in self.relation_pairs())
        return f"TenseHSpace({' '.join(self.names)}; R: {pairs})"


def check_space_axioms(X: TenseHSpace) -> Report:
    """S1 holds trivially on a finite space; S2 and S3 are scanned."""
    findings = [passing("S1")]

    s2 = None
    for x in range(X.n):
        image = X.succ[x]
        hull = X.poset.down_closure(image) & X.poset.up_closure(image)
        if hull != image:
            y = next(bitsets.members_of(hull & ~image))
            s2 = {"x": X.name(x), "y": X.name(y)}
            break
    findings.append(from_witness("S2", s2))

    s3 = None
    ups = X.upsets
    images = X.operators_on(ups)
    for i, U in enumerate(ups):
        for u in OPERATORS:
            if not X.poset.is_upset(images[u][i]):
                s3 = {"op": u, "U": X.poset.set_name(U)}
                break
        if s3 is not None:
            break
    findings.append(from_witness("S3", s3))

    return Report(findings)


def require_space_axioms(X: TenseHSpace) -> None:
    for finding in check_space_axioms(X):
        if not finding.passed:
            raise SpaceAxiomViolation(finding.check, finding.witness)


# ── Spectrum ────────────────────────────────────────────────────────


def spectrum(A: TenseHAlgebra) -> list[Filter]:
    """Prime filters of ``A`` sorted by generator; the point order of the dual space."""
    return enumerate_prime_filters(A)


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Membership and operator preimages of the prime filters, as boolean matrices."""

    primes: list[Filter]
    member: BoolMatrix

    def pre(self, A: TenseHAlgebra, u: Operator) -> BoolMatrix:
        """``pre[s, x]`` iff ``u(x)`` lies in prime ``s``."""
        return self.member[:, A.ops[u]]


def spectral_data(A: TenseHAlgebra) -> SpectralData:
    primes = spectrum(A)
    member = np.array([bitsets.to_mask(s.members, A.n) for s in primes], dtype=bool)
    member = member.reshape(len(primes), A.n)

    return SpectralData(primes, member)


def relation_fg(A: TenseHAlgebra, data: SpectralData | None = None) -> BoolMatrix:
    """``f^-1(S) <= A - T <= g^-1(S)``."""
    data = data or spectral_data(A)
    mem = data.member

    return disjoint_rows(data.pre(A, "f"), mem) & disjoint_rows(~data.pre(A, "g"), ~mem)


def relation_ph(A: TenseHAlgebra, data: SpectralData | None = None) -> BoolMatrix:
    """``p^-1(T) <= A - S <= h^-1(T)``."""
    data = data or spectral_data(A)
    mem = data.member

    return disjoint_rows(mem, data.pre(A, "p")) & disjoint_rows(~mem, ~data.pre(A, "h"))


def inclusion(data: SpectralData) -> BoolMatrix:
    return disjoint_rows(data.member, ~data.member)


def dual_space(A: TenseHAlgebra) -> TenseHSpace:
    """Prime filters named ``^x`` after their generator, ordered by inclusion, with R_A."""
    data = spectral_data(A)
    names = [filter_name(A, s) for s in data.primes]
    poset = FinitePoset(names, inclusion(data))

    X = TenseHSpace(poset, relation_fg(A, data))
    LOGGER.debug("dual space: %d points, %d related pairs", X.n, int(X.R.sum()))

    return X


def check_relation_forms(A: TenseHAlgebra) -> Report:
    """Both definitions of R_A, convexity of its images, and the four composition forms."""
    data = spectral_data(A)
    X = dual_space(A)
    R = relation_fg(A, data)
    le = inclusion(data)
    mem = data.member
    pair = ("S", "T")

    def named(bad: BoolMatrix) -> dict[str, str] | None:
        return first_witness(X.poset, bad, pair)

    convex = check_space_axioms(X)["S2"]
    forms = [
        ("R-FORMS", R != relation_ph(A, data)),
        ("COMPOSE-g", disjoint_rows(~data.pre(A, "g"), ~mem) != relation_product(R, le)),
        ("COMPOSE-h", disjoint_rows(~mem, ~data.pre(A, "h")) != relation_product(le.T, R)),
        ("COMPOSE-f", disjoint_rows(data.pre(A, "f"), mem) != relation_product(R, le.T)),
        ("COMPOSE-p", disjoint_rows(mem, data.pre(A, "p")) != relation_product(le, R)),
    ]

    findings = [from_witness(check, named(bad)) for check, bad in forms]
    findings.insert(1, Finding(check="CONVEX", passed=convex.passed, witness=convex.witness))

    return Report(findings)


def check_operator_recovery(A: TenseHAlgebra) -> Report:
    """Each operator is read back from R_A.

    ``g(a) not in S`` iff every R_A-successor of S contains ``a``;
    ``h(a) not in S`` iff every R_A-predecessor of S contains ``a``;
    ``f(a) in S`` iff no R_A-successor of S contains ``a``;
    ``p(a) in S`` iff no R_A-predecessor of S contains ``a``.
    """
    data = spectral_data(A)
    X = dual_space(A)
    R = relation_fg(A, data)
    mem = data.member

    # all_in[s, a] iff every T related to s contains a
    succ_all_in = disjoint_rows(R, ~mem.T)
    pred_all_in = disjoint_rows(R.T, ~mem.T)
    succ_none_in = disjoint_rows(R, mem.T)
    pred_none_in = disjoint_rows(R.T, mem.T)

    clauses = [
        ("RECOVER-g", ~data.pre(A, "g") != succ_all_in),
        ("RECOVER-h", ~data.pre(A, "h") != pred_all_in),
        ("RECOVER-f", data.pre(A, "f") != succ_none_in),
        ("RECOVER-p", data.pre(A, "p") != pred_none_in),
    ]

    findings = []
    for check, bad in clauses:
        hits = np.argwhere(bad)
        if len(hits):
            s, a = (int(i) for i in hits[0])
            findings.append(failing(check, S=X.name(s), a=A.name(a)))
        else:
            findings.append(passing(check))

    return Report(findings)


# ── Up-set algebra ──────────────────────────────────────────────────


def dual_algebra(X: TenseHSpace) -> TenseHAlgebra:
    """Up-sets of ``X`` ordered by inclusion, with g_R, h_R, f_R, p_R.

    Raises SpaceAxiomViolation when S2 or S3 fails.
    """
    require_space_axioms(X)

    ups = X.upsets
    k = len(ups)
    position = {U: i for i, U in enumerate(ups)}
    names = [X.poset.set_name(U) for U in ups]

    leq = np.array([[bitsets.is_subset(U, V) for V in ups] for U in ups], dtype=bool)
    meet = np.array([[position[U & V] for V in ups] for U in ups], dtype=np.int64)
    join = np.array([[position[U | V] for V in ups] for U in ups], dtype=np.int64)

    imp = np.empty((k, k), dtype=np.int64)
    for i, U in enumerate(ups):
        for j, V in enumerate(ups):
            # x is in U -> V iff nothing above x lies in U - V
            W = bitsets.bits_of(
                x for x in range(X.n) if X.poset.up(x) & U & ~V == 0
            )
            imp[i, j] = position[W]

    poset = FinitePoset(names.copy(), leq.reshape(k, k), validate=False)
    lattice = FiniteLattice(
        poset,
        meet.reshape(k, k),
        join.reshape(k, k),
        position[0],
        position[bitsets.full(X.n)],
    )
    H = HeytingAlgebra(lattice, imp)

    images = X.operators_on(ups)
    tables = {u: [position[V] for V in images[u]] for u in OPERATORS}

    return TenseHAlgebra(H, **tables)


# ── Morphisms of spaces ─────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class SpaceMorphism:
    source: TenseHSpace
    target: TenseHSpace
    mapping: tuple[Element, ...]

    def __post_init__(self) -> None:
        ensure(
            len(self.mapping) == self.source.n,
            FormatError,
            f"map needs {self.source.n} entries, got {len(self.mapping)}",
        )
        ensure(
            all(0 <= y < self.target.n for y in self.mapping),
            FormatError,
            "map leaves the target space",
        )

    @classmethod
    def from_names(
        cls, source: TenseHSpace, target: TenseHSpace, names: Mapping[str, str]
    ) -> "SpaceMorphism":
        missing = [x for x in source.names if x not in names]
        ensure(not missing, FormatError, f"map misses {' '.join(missing)}")

        unknown = [x for x in names if x not in source.names]
        ensure(not unknown, FormatError, f"map names unknown points {' '.join(unknown)}")

        return cls(source, target, tuple(target.index(names[x]) for x in source.names))

    def __call__(self, x: Element) -> Element:
        return self.mapping[x]

    def preimage(self, bits: Bits) -> Bits:
        return bitsets.bits_of(
            x for x, y in enumerate(self.mapping) if bitsets.contains(bits, y)
        )

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.mapping)) == self.source.n

    def __repr__(self) -> str:
        pairs = " ".join(
            f"{self.source.name(x)}->{self.target.name(y)}" for x, y in enumerate(self.mapping)
        )
        return f"SpaceMorphism({pairs})"


def space_identity(X: TenseHSpace) -> SpaceMorphism:
    return SpaceMorphism(X, X, tuple(range(X.n)))


def compose(
    second: AlgebraMorphism | SpaceMorphism, first: AlgebraMorphism | SpaceMorphism
) -> AlgebraMorphism | SpaceMorphism:
    """``second`` after ``first``, for either kind of morphism."""
    match second, first:
        case AlgebraMorphism(), AlgebraMorphism():
            return compose_algebra_morphisms(second, first)
        case SpaceMorphism(), SpaceMorphism():
            ensure(
                first.target.names == second.source.names,
                FormatError,
                "morphisms do not compose",
            )
            return SpaceMorphism(
                first.source,
                second.target,
                tuple(second(first(x)) for x in range(first.source.n)),
            )
        case _:
            raise TypeError("cannot compose an algebra morphism with a space morphism")


def heyting_morphism_witness(k: SpaceMorphism) -> dict[str, str] | None:
    """Order preservation, then ``k(↑x) = ↑k(x)``."""
    X1, X2 = k.source, k.target
    K = np.array(k.mapping, dtype=np.int64)

    hits = np.argwhere(X1.leq & ~X2.leq[K[:, None], K[None, :]])
    if len(hits):
        x, y = (int(i) for i in hits[0])
        return {"x": X1.name(x), "y": X1.name(y)}

    for x in range(X1.n):
        image = bitsets.bits_of(k(z) for z in bitsets.members_of(X1.poset.up(x)))
        if image != X2.poset.up(k(x)):
            return {"x": X1.name(x)}

    return None


def is_heyting_morphism(k: SpaceMorphism) -> bool:
    return heyting_morphism_witness(k) is None


def is_space_isomorphism(k: SpaceMorphism) -> bool:
    """Bijective, order isomorphism, and ``R`` preserved and reflected."""
    if not k.is_bijective():
        return False

    K = np.array(k.mapping, dtype=np.int64)
    order_ok = np.array_equal(k.source.leq, k.target.leq[K[:, None], K[None, :]])
    relation_ok = np.array_equal(k.source.R, k.target.R[K[:, None], K[None, :]])

    return bool(order_ok and relation_ok)


def check_morphism_equivalence(k: SpaceMorphism) -> Report:
    """The pointwise conditions m1 to m5 against the up-set conditions M1 to M5.

    Both families are evaluated independently; their overall verdicts must
    agree, otherwise EquivalenceMismatch is raised.
    """
    witness = heyting_morphism_witness(k)
    if witness is not None:
        raise NotAHomomorphism(
            "not a Heyting morphism: " + " ".join(f"{a}={b}" for a, b in witness.items())
        )

    X1, X2 = k.source, k.target
    K = np.array(k.mapping, dtype=np.int64)
    R1, R2 = X1.R, X2.R
    below = X2.leq[K, :]  # below[z, y] iff k(z) <= y
    above = X2.leq[:, K].T  # above[z, y] iff y <= k(z)
    forward = R2[K, :]  # forward[x, y] iff (k(x), y) in R2
    backward = R2[:, K].T  # backward[x, y] iff (y, k(x)) in R2

    def pointwise(check: str, bad: BoolMatrix, second: TenseHSpace) -> Finding:
        hits = np.argwhere(bad)
        if len(hits) == 0:
            return passing(check)
        x, y = (int(i) for i in hits[0])
        return failing(check, x=X1.name(x), y=second.name(y))

    m = [
        pointwise("m1", R1 & ~R2[K[:, None], K[None, :]], X1),
        pointwise("m2", forward & ~relation_product(R1, below), X2),
        pointwise("m3", backward & ~relation_product(R1.T, below), X2),
        pointwise("m4", forward & ~relation_product(R1, above), X2),
        pointwise("m5", backward & ~relation_product(R1.T, above), X2),
    ]

    ups2 = X2.upsets
    pulled = [k.preimage(U) for U in ups2]
    images2 = X2.operators_on(ups2)
    images1 = X1.operators_on(pulled)

    M = [Finding(check="M1", passed=m[0].passed, witness=m[0].witness)]
    for label, u in zip(("M2", "M3", "M4", "M5"), ("g", "h", "f", "p")):
        bad = next(
            (
                U
                for i, U in enumerate(ups2)
                if k.preimage(images2[u][i]) != images1[u][i]
            ),
            None,
        )
        M.append(from_witness(label, None if bad is None else {"U": X2.poset.set_name(bad)}))

    pointwise_ok = all(finding.passed for finding in m)
    upset_ok = all(finding.passed for finding in M)
    if pointwise_ok != upset_ok:
        raise EquivalenceMismatch(
            f"m1-m5 {'pass' if pointwise_ok else 'fail'} but M1-M5 {'pass' if upset_ok else 'fail'}"
        )

    return Report([*m, *M])


def check_separation(X: TenseHSpace) -> Report:
    """For each pair outside R, an up-set that separates it.

    Either ``x in f_R(U)`` and ``y in U`` (reported as ``f``), or ``y not in V``
    and ``x not in g_R(V)`` (reported as ``g``). One finding per pair.
    """
    ups = X.upsets
    images = X.operators_on(ups)
    findings = []

    for x in range(X.n):
        for y in range(X.n):
            if X.R[x, y]:
                continue

            found = None
            for i, U in enumerate(ups):
                if bitsets.contains(images["f"][i], x) and bitsets.contains(U, y):
                    found = ("f", U)
                    break
            if found is None:
                for i, V in enumerate(ups):
                    if not bitsets.contains(V, y) and not bitsets.contains(images["g"][i], x):
                        found = ("g", V)
                        break

            if found is None:
                findings.append(failing("SEPARATE", x=X.name(x), y=X.name(y)))
            else:
                kind, W = found
                findings.append(
                    passing(
                        "SEPARATE",
                        x=X.name(x),
                        y=X.name(y),
                        by=kind,
                        U=X.poset.set_name(W),
                    )
                )

    if not findings:
        findings.append(passing("SEPARATE"))

    return Report(findings)


# ── Functors and round trips ────────────────────────────────────────


def dual_morphism(k: AlgebraMorphism) -> SpaceMorphism:
    """``S -> k^-1(S)`` from the spectrum of the target to the spectrum of the source."""
    require_homomorphism(k)

    A1, A2 = k.source, k.target
    X1, X2 = dual_space(A1), dual_space(A2)
    position = {s.members: i for i, s in enumerate(spectrum(A1))}

    mapping = []
    for s in spectrum(A2):
        pulled = k.preimage(s.members)
        if pulled not in position:
            raise IsomorphismFailure(f"preimage of {filter_name(A2, s)} is not prime")
        mapping.append(position[pulled])

    return SpaceMorphism(X2, X1, tuple(mapping))


def dual_space_morphism(k: SpaceMorphism) -> AlgebraMorphism:
    """``U -> k^-1(U)`` from the up-sets of the target to the up-sets of the source."""
    if not is_heyting_morphism(k):
        raise NotAHomomorphism("not a Heyting morphism")

    D1, D2 = dual_algebra(k.source), dual_algebra(k.target)
    position = {U: i for i, U in enumerate(k.source.upsets)}

    mapping = tuple(position[k.preimage(U)] for U in k.target.upsets)
    out = AlgebraMorphism(D2, D1, mapping)
    require_homomorphism(out)

    return out


def sigma(A: TenseHAlgebra) -> AlgebraMorphism:
    """``a -> {P : a in P}`` into the up-set algebra of the spectrum.

    Raises IsomorphismFailure unless it is bijective and commutes with every operation.
    """
    k = _sigma_map(A)
    failures = _sigma_report(k).failures()
    if failures:
        raise IsomorphismFailure(str(failures[0]))

    return k


def _sigma_map(A: TenseHAlgebra) -> AlgebraMorphism:
    X = dual_space(A)
    D = dual_algebra(X)
    data = spectral_data(A)
    position = {U: i for i, U in enumerate(X.upsets)}

    mapping = tuple(position[bitsets.from_mask(data.member[:, a])] for a in range(A.n))
    return AlgebraMorphism(A, D, mapping)


def _sigma_report(k: AlgebraMorphism) -> Report:
    findings = [
        from_witness("SIGMA-BIJECTIVE", None if k.is_bijective() else {"n": k.target.n})
    ]
    for finding in check_homomorphism(k):
        check = finding.check.replace("HOM", "SIGMA", 1)
        findings.append(Finding(check=check, passed=finding.passed, witness=finding.witness))

    return Report(findings)


def check_sigma(A: TenseHAlgebra) -> Report:
    return _sigma_report(_sigma_map(A))


def _epsilon_map(X: TenseHSpace) -> SpaceMorphism:
    D = dual_algebra(X)
    Y = dual_space(D)
    position = {s.members: i for i, s in enumerate(spectrum(D))}

    mapping = []
    for x in range(X.n):
        point = bitsets.bits_of(i for i, U in enumerate(X.upsets) if bitsets.contains(U, x))
        if point not in position:
            raise IsomorphismFailure(f"up-sets containing {X.name(x)} are not a prime filter")
        mapping.append(position[point])

    return SpaceMorphism(X, Y, tuple(mapping))


def _epsilon_report(k: SpaceMorphism) -> Report:
    X, Y = k.source, k.target
    K = np.array(k.mapping, dtype=np.int64)
    pair = ("x", "y")

    return Report(
        [
            from_witness(
                "EPSILON-BIJECTIVE", None if k.is_bijective() else {"n": Y.n}
            ),
            from_witness(
                "EPSILON-ORDER",
                first_witness(X.poset, X.leq != Y.leq[K[:, None], K[None, :]], pair),
            ),
            from_witness(
                "EPSILON-R",
                first_witness(X.poset, X.R != Y.R[K[:, None], K[None, :]], pair),
            ),
        ]
    )


def epsilon(X: TenseHSpace) -> SpaceMorphism:
    """``x -> {U : x in U}`` into the spectrum of the up-set algebra.

    Raises IsomorphismFailure unless it is an order isomorphism that preserves
    and reflects ``R``.
    """
    k = _epsilon_map(X)
    failures = _epsilon_report(k).failures()
    if failures:
        raise IsomorphismFailure(str(failures[0]))

    return k


def check_epsilon(X: TenseHSpace) -> Report:
    return _epsilon_report(_epsilon_map(X))


def check_functoriality(first: AlgebraMorphism, second: AlgebraMorphism) -> Report:
    """The dual of an identity is an identity; the dual of ``second o first`` is
    ``dual(first) o dual(second)``."""
    ident = dual_morphism(identity(first.source))
    ident_ok = ident.mapping == tuple(range(ident.source.n))

    composite = dual_morphism(compose_algebra_morphisms(second, first))
    reversed_duals = compose(dual_morphism(first), dual_morphism(second))

    return Report(
        [
            passing("FUNCTOR-IDENTITY") if ident_ok else failing("FUNCTOR-IDENTITY"),
            (
                passing("FUNCTOR-COMPOSE")
                if composite.mapping == reversed_duals.mapping
                else failing("FUNCTOR-COMPOSE")
            ),
        ]
    )


def check_naturality(k: AlgebraMorphism) -> Report:
    """``sigma(target) o k`` against ``D(dual(k)) o sigma(source)``."""
    left = compose_algebra_morphisms(sigma(k.target), k)
    right = compose_algebra_morphisms(dual_space_morphism(dual_morphism(k)), sigma(k.source))

    for x in range(k.source.n):
        if left(x) != right(x):
            return Report([failing("NATURAL", x=k.source.name(x))])

    return Report([passing("NATURAL")])
