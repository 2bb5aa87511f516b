import itertools
import random

import pytest

from localsim import (
    CanonicalElement,
    InvalidClassError,
    Row,
    SignedSupport,
    SimTable,
    UnsupportedStructureError,
    WallSystem,
    act_on_eclass,
    canonical_eclass,
    cocycle,
    cocycle_identity_defect,
    complement_balls,
    compose,
    gz_member,
    identity,
    incl_class,
    invert,
    max_partition,
    nowalls_demo,
    parse_element,
    point_label,
    properness_audit,
    random_element,
    reduce,
    separating_walls,
    symdiff,
    wall_separation,
    z_member,
    zipper_length,
)
from oracles import brute_force_symdiff


def embed(group, rows):
    return SimTable(group, "embedding", tuple(Row(s, t, g) for s, t, g in rows))


def element_containing(e):
    """Some group element g with e in gZ, built by completing e's table."""
    group = e.group
    image = [r.target for r in e.table.rows]
    missing = complement_balls(group.alphabet, image)
    if not missing:
        return reduce(SimTable(group, "element", e.table.rows))
    rows = [Row((0,) + r.source, r.target, r.germ) for r in e.table.rows]
    srcs = [(1,)]
    while len(srcs) < len(missing):
        w = min(srcs, key=len)
        srcs.remove(w)
        srcs.extend(w + (a,) for a in group.alphabet.letters)
    rows.extend(Row(s, t, 0) for s, t in zip(sorted(srcs), missing))
    return reduce(SimTable(group, "element", tuple(rows)))


def element_missing(e):
    """Some group element g with e not in gZ.

    Non-inclusion classes already sit outside Z itself; an inclusion class
    of a ball B is pushed out by any element whose inverse partition has B
    as an internal node, such as the swap of B's two children.
    """
    group = e.group
    if not z_member(e):
        return identity(group)
    ball = e.table.rows[0].target
    rows = [Row(ball + (0,), ball + (1,), 0), Row(ball + (1,), ball + (0,), 0)]
    rows.extend(Row(w, w, 0) for w in complement_balls(group.alphabet, [ball]))
    return reduce(SimTable(group, "element", tuple(rows)))


class TestCanonicalClasses:
    def test_inclusion_classes(self, t2):
        root = incl_class(t2, ())
        assert z_member(root)
        assert canonical_eclass(embed(t2, [((), (), 0)]), ()) == root
        assert canonical_eclass(embed(t2, [((0,), (0,), 0)]), (0,)) == incl_class(t2, (0,))

    def test_twist_identifies_germ_variants(self, s2):
        plain = canonical_eclass(embed(s2, [((), (0,), 0)]), ())
        twisted = canonical_eclass(embed(s2, [((), (0,), 1)]), ())
        assert plain == twisted
        assert plain == incl_class(s2, (0,))

    def test_twist_does_not_overidentify(self, s2):
        # image ball 0 versus image ball 1 stay different classes
        assert canonical_eclass(embed(s2, [((), (0,), 0)]), ()) != incl_class(s2, (1,))

    def test_sources_must_sit_in_ball(self, t2):
        with pytest.raises(InvalidClassError):
            canonical_eclass(embed(t2, [((0,), (0,), 0)]), (1,))

    def test_sources_must_partition_ball(self, t2):
        with pytest.raises(InvalidClassError):
            canonical_eclass(embed(t2, [((0, 0), (0,), 0)]), (0,))

    def test_element_kind_rejected(self, t2):
        with pytest.raises(InvalidClassError):
            canonical_eclass(identity(t2).table, ())


class TestMembership:
    def test_x0_restriction_not_in_z(self, x0):
        e = canonical_eclass(SimTable(x0.group, "embedding", x0.rows), ())
        assert not z_member(e)
        assert gz_member(x0, e)

    def test_inclusion_of_x_not_in_x0z(self, x0):
        assert not gz_member(x0, incl_class(x0.group, ()))

    def test_identity_translate_is_z(self, t2, x0):
        for b in ((), (0,), (1, 1)):
            assert gz_member(identity(t2), incl_class(t2, b))
        e = act_on_eclass(x0, incl_class(t2, ()))
        assert gz_member(identity(t2), e) == z_member(e)

    def test_action_law_and_inverses(self, configurations):
        rng = random.Random(71)
        for group in configurations:
            for _ in range(15):
                g1 = random_element(group, rng, max_depth=3)
                g2 = random_element(group, rng, max_depth=3)
                b = tuple(rng.randrange(group.alphabet.size) for _ in range(rng.randrange(3)))
                e = incl_class(group, b)
                assert act_on_eclass(g1, act_on_eclass(g2, e)) == act_on_eclass(compose(g1, g2), e)
                assert act_on_eclass(invert(g1), act_on_eclass(g1, e)) == e

    def test_act_on_inclusion_is_restriction(self, x0):
        e = act_on_eclass(x0, incl_class(x0.group, (0,)))
        assert e.table.rows == (Row((0,), (0,), 0), Row((1,), (1, 0), 0))


class TestSymdiff:
    def test_identity_empty(self, t2):
        assert len(symdiff(identity(t2))) == 0

    def test_x0_frozen(self, x0, t2):
        want = {
            incl_class(t2, ()): -1,
            incl_class(t2, (1,)): -1,
            act_on_eclass(x0, incl_class(t2, ())): 1,
            act_on_eclass(x0, incl_class(t2, (0,))): 1,
        }
        assert symdiff(x0) == SignedSupport(want)

    def test_global_germ_empty(self, s2):
        root_swap = parse_element("e->e:1", s2)
        assert len(symdiff(root_swap)) == 0
        assert zipper_length(root_swap) == 0

    def test_matches_membership_oracle(self, configurations):
        rng = random.Random(73)
        for group in configurations:
            for _ in range(8):
                g = random_element(group, rng, max_depth=2)
                assert symdiff(g).as_dict() == brute_force_symdiff(g)

    def test_support_signs_verified(self, configurations):
        rng = random.Random(79)
        for group in configurations:
            for _ in range(10):
                g = random_element(group, rng, max_depth=3)
                for e, sign in symdiff(g).items():
                    if sign == 1:
                        assert gz_member(g, e) and not z_member(e)
                    else:
                        assert z_member(e) and not gz_member(g, e)


class TestZipperLength:
    def test_identity(self, t2):
        assert zipper_length(identity(t2)) == 0

    def test_x0(self, x0):
        assert zipper_length(x0) == 4

    def test_inverse_symmetry_and_closed_form(self, configurations):
        rng = random.Random(83)
        for group in configurations:
            d = group.alphabet.size
            for _ in range(20):
                g = random_element(group, rng, max_depth=3)
                n = len(max_partition(g))
                assert zipper_length(g) == 2 * (n - 1) // (d - 1)
                assert zipper_length(g) == zipper_length(invert(g))

    def test_subadditive(self, configurations):
        rng = random.Random(89)
        for group in configurations:
            for _ in range(20):
                g = random_element(group, rng, max_depth=3)
                h = random_element(group, rng, max_depth=3)
                assert zipper_length(compose(g, h)) <= zipper_length(g) + zipper_length(h)


class TestCocycle:
    def test_cocycle_is_symdiff(self, x0):
        assert cocycle(x0) == symdiff(x0)

    def test_defect_with_identity(self, t2, x0):
        assert cocycle_identity_defect(identity(t2), x0) == 0
        assert cocycle_identity_defect(x0, identity(t2)) == 0

    def test_defect_with_inverse(self, x0):
        assert cocycle_identity_defect(x0, invert(x0)) == 0

    def test_defect_x0_x1(self, x0, x1):
        assert cocycle_identity_defect(x0, x1) == 0

    def test_defect_zero_on_random_pairs(self, configurations):
        rng = random.Random(97)
        for group in configurations:
            for _ in range(15):
                g1 = random_element(group, rng, max_depth=3)
                g2 = random_element(group, rng, max_depth=3)
                assert cocycle_identity_defect(g1, g2) == 0

    def test_translate_matches_pullback(self, x0, x1):
        # the translated support evaluates by pulling the class back
        moved = symdiff(x1).translate(x0)
        back = invert(x0)
        for e, v in moved.items():
            assert symdiff(x1).value(act_on_eclass(back, e)) == v


class TestWalls:
    def test_self_separation_zero(self, x0):
        assert wall_separation(x0, x0) == 0

    def test_identity_vs_x0(self, t2, x0):
        assert wall_separation(identity(t2), x0) == 4
        assert wall_separation(identity(t2), x0) == zipper_length(x0)

    def test_symmetric_and_left_invariant(self, configurations):
        rng = random.Random(101)
        for group in configurations:
            for _ in range(10):
                g1 = random_element(group, rng, max_depth=3)
                g2 = random_element(group, rng, max_depth=3)
                h = random_element(group, rng, max_depth=3)
                assert wall_separation(g1, g2) == wall_separation(g2, g1)
                assert wall_separation(compose(h, g1), compose(h, g2)) == wall_separation(g1, g2)

    def test_separating_walls_really_separate(self, t2, x0, x1):
        for g1, g2 in ((identity(t2), x0), (x0, x1)):
            walls = separating_walls(g1, g2)
            assert len(walls) == wall_separation(g1, g2)
            for e, side in walls:
                in1, in2 = gz_member(g1, e), gz_member(g2, e)
                assert in1 != in2
                assert side == (1 if in1 else -1)

    def test_point_labels_classify_cosets(self, t2, s2, x0):
        rng = random.Random(103)
        assert point_label(identity(t2)) == incl_class(t2, ())
        for group in (t2, s2):
            for _ in range(10):
                g = random_element(group, rng, max_depth=3)
                stab = parse_element("e->e:1", s2) if group is s2 else identity(t2)
                same = compose(g, stab)
                assert point_label(same) == point_label(g)
                assert wall_separation(g, same) == 0
        other = compose(x0, x0)
        assert point_label(other) != point_label(x0)
        assert wall_separation(x0, other) == zipper_length(compose(invert(x0), other)) > 0

    def test_wall_system(self, t2, x0, x1):
        system = WallSystem.from_elements([identity(t2), x0, x1, compose(x0, identity(t2))])
        assert len(system.representatives) == 3
        root = incl_class(t2, ())
        inside, outside = system.half_spaces(root)
        assert inside == (0,) and outside == (1, 2)
        assert system.is_wall(root)
        assert not system.is_wall(incl_class(t2, (0, 0, 0, 0)))
        assert system.separation(0, 1) == zipper_length(x0)


class TestHalfSpaceNonemptiness:
    def test_every_class_is_somewhere_and_missing_somewhere(self, t2):
        # desk-scale version of the global-intersection emptiness checks:
        # every sampled class lies in some translate and misses some other
        rng = random.Random(107)
        samples = [incl_class(t2, b) for b in itertools.product((0, 1), repeat=2)]
        samples += [incl_class(t2, ()), incl_class(t2, (0,))]
        for _ in range(10):
            g = random_element(t2, rng, max_depth=3)
            b = tuple(rng.randrange(2) for _ in range(rng.randrange(3)))
            samples.append(act_on_eclass(g, incl_class(t2, b)))
        for e in samples:
            assert gz_member(element_containing(e), e)
            assert not gz_member(element_missing(e), e)


class TestPropernessAudit:
    def test_no_generators(self, t2):
        report = properness_audit(t2, [], radius=4, threshold=10)
        assert [r.ball_size for r in report.rows] == [1, 1, 1, 1, 1]
        assert report.counts() == [1, 1, 1, 1, 1]
        assert report.stabilized

    def test_threshold_zero_only_identity(self, t2, v_gens):
        report = properness_audit(t2, v_gens, radius=3, threshold=0)
        assert report.counts() == [1, 1, 1, 1]

    def test_v_generators_frozen_counts(self, t2, v_gens):
        report = properness_audit(t2, v_gens, radius=5, threshold=4)
        assert report.counts() == [1, 6, 13, 20, 22, 22]
        assert not report.stabilized
        longer = properness_audit(t2, v_gens, radius=6, threshold=4)
        assert longer.counts()[-3:] == [22, 22, 22]
        assert longer.stabilized

    def test_counts_agree_with_lengths(self, t2, v_gens):
        # spot check the fast in-audit length against the real one
        rng = random.Random(109)
        for _ in range(20):
            g = random_element(t2, rng, max_depth=3)
            d = t2.alphabet.size
            assert zipper_length(g) == 2 * (len(g.rows) - 1) // (d - 1)


class TestNowalls:
    def test_single_witness_is_identity(self, t2):
        rep = nowalls_demo(t2, 1)
        assert rep.witnesses == (identity(t2),)
        assert rep.ok
        assert z_member(rep.first_class)
        assert not z_member(rep.second_class)
        assert rep.second_class.table.rows == (Row((0,), (1, 0), 0), Row((1,), (1, 1, 1), 0))

    def test_three_witnesses(self, t2):
        rep = nowalls_demo(t2, 3)
        assert rep.ok and len(rep.witnesses) == 3
        assert len({w.packed() for w in rep.witnesses}) == 3
        for g in rep.witnesses:
            assert gz_member(g, rep.first_class)
            assert not gz_member(g, rep.second_class)
        assert gz_member(rep.covering_element, rep.second_class)

    def test_wrong_structure(self, s2, t3):
        for group in (s2, t3):
            with pytest.raises(UnsupportedStructureError):
                nowalls_demo(group, 1)

    def test_bad_count(self, t2):
        with pytest.raises(ValueError):
            nowalls_demo(t2, 0)
