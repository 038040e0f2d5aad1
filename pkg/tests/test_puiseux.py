import random
from fractions import Fraction as F

import pytest

from powmon import (
    FamilyPreconditionError,
    InvalidInputError,
    NotAMemberError,
    PuiseuxMonoid,
    UnsupportedAmbientError,
    geometric,
    geometric_chain,
    parse_monoid,
)
from powmon.puiseux import ReprSolver
from oracles import brute_mcds, chain_value, reachable_upto


def test_scale_isomorphism_examples():
    m = PuiseuxMonoid([F(1, 2), F(1, 3)])
    assert m.scale == 6
    assert m.scaled_generators == (2, 3)  # 1/3 -> 2, 1/2 -> 3
    assert m.numerical.atoms == (2, 3)

    single = PuiseuxMonoid([F(2)])
    assert single.scale == F(1, 2)
    assert single.numerical.atoms == (1,)

    m2 = PuiseuxMonoid([F(4, 5), F(6, 7)])
    assert m2.scale == F(35, 2)
    assert m2.scaled_generators == (14, 15)


def test_construction_errors():
    with pytest.raises(InvalidInputError):
        PuiseuxMonoid([])
    with pytest.raises(InvalidInputError):
        PuiseuxMonoid([F(0), F(1, 2)])
    with pytest.raises(InvalidInputError):
        PuiseuxMonoid([F(-1, 2)])


def test_membership():
    m = PuiseuxMonoid([F(1, 2), F(1, 3)])
    assert m.contains(F(5, 6))
    assert not m.contains(F(1, 6))
    assert m.contains(0)
    assert not m.contains(F(-1))
    # scale-integrality alone is not enough: 1/6 scales to 1 which is a gap
    assert m.to_scaled(F(1, 6)) == 1


def test_atoms():
    assert PuiseuxMonoid([F(1, 2), F(1, 3), F(5, 6)]).atoms() == (F(1, 3), F(1, 2))
    assert PuiseuxMonoid([F(2)]).atoms() == (F(2),)


def test_divisors_and_factorizations_pull_back():
    m = PuiseuxMonoid([F(1, 2), F(1, 3)])
    assert m.divisors(F(5, 6)) == [0, F(1, 3), F(1, 2), F(5, 6)]
    assert m.divisors(F(0)) == [0]
    m23 = PuiseuxMonoid([2, 3])
    assert m23.divisors(F(4)) == [0, 2, 4]

    zs = m.factorizations(F(1))
    rendered = {tuple(z.expand()) for z in zs}
    assert rendered == {(F(1, 2), F(1, 2)), (F(1, 3), F(1, 3), F(1, 3))}
    for z in zs:
        assert sum(a * c for a, c in z.counts) == 1

    atom_zs = m.factorizations(F(1, 2))
    assert len(atom_zs.items) == 1 and atom_zs.items[0].length == 1

    with pytest.raises(NotAMemberError):
        m.factorizations(F(1, 6))


def test_mcd_examples_and_oracle():
    m23 = PuiseuxMonoid([2, 3])
    assert m23.mcd([F(4), F(6)]) == (4,)
    assert m23.mcd([F(7)]) == (7,)
    assert m23.mcd([F(2), F(3)]) == (0,)
    with pytest.raises(NotAMemberError):
        m23.mcd([F(1), F(2)])
    # against the brute divisor-lattice scan
    for x in range(0, 15):
        for y in range(x, 15):
            members = reachable_upto([2, 3], 20)
            if x in members and y in members:
                got = [int(d) for d in m23.mcd([F(x), F(y)])]
                assert got == brute_mcds([2, 3], [x, y]), (x, y)


def test_membership_scale_soundness_random():
    rng = random.Random(23)
    for _ in range(25):
        dens = rng.sample([2, 3, 4, 5, 6, 7], 3)
        gens = [F(rng.randrange(1, 9), d) for d in dens]
        monoid = PuiseuxMonoid(gens)
        scaled_members = reachable_upto(monoid.scaled_generators, 400)
        for _ in range(40):
            q = F(rng.randrange(0, 60), rng.randrange(1, 12))
            t = q * monoid.scale
            expected = t.denominator == 1 and t.numerator in scaled_members and t <= 400
            if t.denominator == 1 and t.numerator > 400:
                continue
            assert monoid.contains(q) == expected, (gens, q)


def test_solver_agrees_with_apery_backend():
    """The valuation-guided solver and the Apery table answer identically
    on monoids small enough to run both (prime-power denominators included,
    so residue strides mod p**e with e > 1 get exercised)."""
    rng = random.Random(31)
    for _ in range(30):
        dens = rng.sample([2, 3, 4, 5, 7, 8, 9, 25, 27], 3)
        gens = sorted({F(rng.randrange(1, 8), d) for d in dens})
        monoid = PuiseuxMonoid(gens)
        solver = ReprSolver(monoid.generators)
        atoms = monoid.atoms()
        assert tuple(g for g in monoid.generators if solver.is_atom_generator(g)) == atoms
        atom_solver = ReprSolver(atoms)
        for _ in range(25):
            q = F(rng.randrange(0, 40), rng.randrange(1, 10))
            assert solver.is_member(q) == monoid.contains(q), (gens, q)
        for _ in range(5):
            q = sum(rng.choice(atoms) for _ in range(rng.randrange(0, 5)))
            vectors, exhaustive = atom_solver.search(F(q))
            assert exhaustive
            got = {
                tuple(sorted(sum(([a] * c for a, c in zip(atom_solver.gens, vec)), [])))
                for vec in vectors
            }
            expected = {tuple(sorted(z.expand())) for z in monoid.factorizations(F(q))}
            assert got == expected, (gens, q)


def test_solver_combined_residue_constraints():
    """A composite denominator makes one generator the unique negative
    carrier at two primes at once; the solver must combine both residue
    constraints and still agree with the Apery backend."""
    gens = [F(5, 6), F(4)]
    monoid = PuiseuxMonoid(gens)
    solver = ReprSolver(gens)
    for num in range(0, 121):
        for den in (1, 2, 3, 6):
            q = F(num, den)
            assert solver.is_member(q) == monoid.contains(q), q
    vectors, exhaustive = solver.search(F(25, 6) + 8)
    assert exhaustive
    totals = {sum(c * g for g, c in zip(solver.gens, vec)) for vec in vectors}
    assert totals == {F(25, 6) + 8}


def test_parse_monoid_forms():
    assert parse_monoid("2,3").generators == (2, 3)
    assert parse_monoid("<1/2, 1/3>").generators == (F(1, 3), F(1, 2))
    assert parse_monoid("1").numerical.frobenius == -1
    with pytest.raises(InvalidInputError):
        parse_monoid("")


def test_str_and_json():
    m = PuiseuxMonoid([F(1, 2), F(1, 3)])
    assert str(m) == "<1/3, 1/2>"
    data = m.to_json()
    assert data["scale"] == "6"
    assert data["numerical_generators"] == ["2", "3"]


# ---------------------------------------------------------------------------
# geometric family


def test_geometric_atoms():
    assert set(geometric(F(2, 3), 3).atoms()) == {F(1), F(2, 3), F(4, 9), F(8, 27)}
    assert set(geometric(F(3, 4), 2).atoms()) == {F(1), F(3, 4), F(9, 16)}
    assert geometric(F(2, 3), 0).atoms() == (F(1),)


def test_geometric_preconditions():
    with pytest.raises(FamilyPreconditionError):
        geometric(F(3, 2), 2)  # not below 1
    with pytest.raises(FamilyPreconditionError):
        geometric(F(1, 2), 2)  # numerator 1
    with pytest.raises(FamilyPreconditionError):
        geometric(F(2, 3), -1)


def test_geometric_chain_values():
    report = geometric_chain(F(2, 3), 3)
    assert report.verified
    assert [e.value for e in report.entries] == [
        chain_value(2, 3, 1), chain_value(2, 3, 2), chain_value(2, 3, 3)
    ] == [F(2), F(4, 3), F(8, 9)]
    assert report.entries[0].step == F(2, 3)
    assert report.entries[1].step == F(4, 9)
    assert "denominator - numerator" in report.sign_note


def test_geometric_chain_steps_live_in_monoid():
    for ratio, depth in [(F(2, 3), 6), (F(3, 5), 4), (F(5, 7), 3)]:
        report = geometric_chain(ratio, depth)
        assert report.verified
        for e in report.entries:
            assert e.value == ratio.numerator * ratio ** (e.index - 1)
            assert e.step == (ratio.denominator - ratio.numerator) * ratio**e.index
            assert report.monoid.contains(e.step)


def test_geometric_factorizations_of_two():
    monoid = geometric(F(2, 3), 2)
    zs = {tuple(z.expand()) for z in monoid.factorizations(F(2))}
    assert (F(1), F(1)) in zs
    assert (F(2, 3), F(2, 3), F(2, 3)) in zs
    for z in monoid.factorizations(F(2)):
        assert sum(a * c for a, c in z.counts) == 2


def test_geometric_chain_first_value_is_numerator():
    for ratio in (F(2, 3), F(3, 4), F(4, 7)):
        assert geometric_chain(ratio, 1).entries[0].value == ratio.numerator


def test_members_upto_unavailable_without_apery():
    solver_only = PuiseuxMonoid([F(1, 600007), F(1, 700001)])
    assert solver_only.numerical is None
    with pytest.raises(UnsupportedAmbientError):
        solver_only.members_upto(1)
