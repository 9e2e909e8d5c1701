"""
Unit tests for permutations, groups, automorphisms and quotients.
"""

from __future__ import annotations

import json

import pytest

from chromatic_forge.core.errors import GroupValidationError, ParseError, ResourceLimitError
from chromatic_forge.core.graph import Graph, complete, cycle, hns, path, suspend
from chromatic_forge.core.perm import (
    DihedralKind,
    Permutation,
    PermGroup,
    automorphism_group,
    classify_dihedral_element,
    close,
    cyclic,
    cyclic_subgroups,
    dihedral,
    expected_cycle_quotient,
    is_automorphism,
    lift_group,
    parse_element,
    parse_group_spec,
    quotient,
    reflection,
    rotation,
    subgroups,
)


# ── Permutation ────────────────────────────────────────────────────────


class TestPermutation:
    """Test the Permutation value type."""

    def test_rejects_non_bijection(self):
        with pytest.raises(GroupValidationError):
            Permutation((0, 0, 1))

    def test_composition_applies_right_first(self):
        p = Permutation((1, 2, 0))
        q = Permutation((1, 0, 2))
        assert (p * q).images == tuple(p(q(v)) for v in range(3))

    def test_inverse(self):
        p = Permutation((2, 0, 3, 1))
        assert (p * p.inverse()).is_identity()

    def test_power(self):
        r = rotation(6, 1)
        assert r**3 == rotation(6, 3)
        assert r**-1 == rotation(6, 5)
        assert (r**6).is_identity()

    def test_order(self):
        assert rotation(6, 2).order() == 3
        assert reflection(6, 1).order() == 2
        assert Permutation((1, 0, 3, 4, 2)).order() == 6

    def test_orbits(self):
        assert rotation(6, 3).orbits() == [(0, 3), (1, 4), (2, 5)]

    def test_reflection_is_v_to_k_minus_v(self):
        f = reflection(5, 2)
        assert f.to_list() == [2, 1, 0, 4, 3]


# ── Groups ─────────────────────────────────────────────────────────────


class TestGroups:
    """Test closure, subgroups and Group JSON."""

    def test_dihedral_order(self):
        assert dihedral(6).order == 12

    def test_close_deduplicates(self):
        g = close([rotation(4, 1), rotation(4, 1), rotation(4, 2)])
        assert g.order == 4

    def test_cyclic(self):
        assert cyclic(rotation(6, 2)).order == 3

    def test_group_requires_identity(self):
        with pytest.raises(GroupValidationError):
            PermGroup(3, (Permutation((1, 2, 0)),))

    def test_group_requires_closure(self):
        with pytest.raises(GroupValidationError):
            PermGroup(3, (Permutation((0, 1, 2)), Permutation((1, 2, 0))))

    def test_dict_roundtrip(self):
        g = dihedral(5)
        again = PermGroup.from_dict(json.loads(json.dumps(g.to_dict())))
        assert again.element_set == g.element_set

    @pytest.mark.parametrize("n,count", [(3, 6), (4, 10), (6, 16)])
    def test_dihedral_subgroup_counts(self, n, count):
        subs = subgroups(dihedral(n))
        assert len(subs) == count
        assert subs[0].order == 1
        assert subs[-1].order == 2 * n

    def test_subgroups_are_subgroups(self):
        group = dihedral(4)
        assert all(s.is_subgroup_of(group) for s in subgroups(group))

    def test_subgroup_cap(self):
        with pytest.raises(ResourceLimitError):
            subgroups(automorphism_group(complete(5)))

    def test_cyclic_subgroups_of_d8(self):
        assert len(cyclic_subgroups(dihedral(4))) == 7


# ── Automorphisms ──────────────────────────────────────────────────────


class TestAutomorphisms:
    """Test the backtracking automorphism search."""

    def test_cycle_gives_dihedral(self):
        assert automorphism_group(cycle(6)).element_set == dihedral(6).element_set

    @pytest.mark.parametrize(
        "g,order",
        [(complete(4), 24), (path(5), 2), (hns(2, 3), 12), (Graph(3), 6), (path(1), 1)],
    )
    def test_orders(self, g, order):
        assert automorphism_group(g).order == order

    def test_every_element_is_automorphism(self):
        g = suspend(cycle(4), 1, 2)
        group = automorphism_group(g)
        assert all(is_automorphism(g, p) for p in group.elements)

    def test_loops_must_map_to_loops(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)], loops=[0])
        assert automorphism_group(g).order == 1

    def test_vertex_cap(self):
        with pytest.raises(ResourceLimitError):
            automorphism_group(path(20))


# ── Quotients and lifts ────────────────────────────────────────────────


class TestQuotient:
    """Test quotient graphs and group lifting."""

    def test_antipodal_quotient_of_c6_is_triangle(self):
        assert quotient(cycle(6), rotation(6, 3)) == complete(3)

    def test_coprime_rotation_gives_looped_vertex(self):
        q = quotient(cycle(6), rotation(6, 1))
        assert q.num_vertices == 1
        assert q.loops == frozenset({0})

    def test_identity_quotient_is_graph(self):
        assert quotient(cycle(5), Permutation.identity(5)) == cycle(5)

    def test_non_automorphism_rejected(self):
        with pytest.raises(GroupValidationError):
            quotient(path(3), Permutation((1, 0, 2)))

    @pytest.mark.parametrize("n", range(3, 11))
    def test_cycle_case_table(self, n):
        for p in dihedral(n).elements:
            element = classify_dihedral_element(n, p)
            q = quotient(cycle(n), p)
            assert (q.num_vertices, len(q.loops)) == expected_cycle_quotient(n, element)

    def test_classify(self):
        element = classify_dihedral_element(6, reflection(6, 2))
        assert element.kind is DihedralKind.REFLECTION
        assert element.k == 2

    def test_lift_preserves_order_and_automorphism(self):
        base = cycle(6)
        group = close([rotation(6, 3)])
        lifted = lift_group(group, base, 1, 2)
        forged = suspend(base, 1, 2)
        assert lifted.order == 2
        assert lifted.degree == forged.num_vertices
        assert all(is_automorphism(forged, p) for p in lifted.elements)


# ── Parsing ────────────────────────────────────────────────────────────


class TestParsing:
    """Test element and group specs."""

    def test_antipodal(self):
        assert parse_element("antipodal", 6) == rotation(6, 3)

    def test_antipodal_needs_even_n(self):
        with pytest.raises(ParseError):
            parse_element("antipodal", 5)

    def test_named_elements(self):
        assert parse_element("rot:2", 6) == rotation(6, 2)
        assert parse_element("flip:1", 6) == reflection(6, 1)

    def test_json_element(self):
        assert parse_element("[1, 0, 2]", 3) == Permutation((1, 0, 2))

    def test_json_element_wrong_degree(self):
        with pytest.raises(ParseError):
            parse_element("[1, 0]", 3)

    def test_default_is_full_group(self):
        assert parse_group_spec([], cycle(6)).order == 12

    def test_generated_group(self):
        assert parse_group_spec(["antipodal"], cycle(6)).order == 2
        assert parse_group_spec(["rot:2", "flip:0"], cycle(6)).order == 6

    def test_trivial(self):
        assert parse_group_spec(["trivial"], cycle(5)).order == 1

    def test_group_json(self, tmp_path):
        f = tmp_path / "group.json"
        f.write_text(json.dumps(close([rotation(4, 1)]).to_dict()))
        assert parse_group_spec([str(f)], cycle(4)).order == 4

    def test_non_automorphism_generator(self):
        with pytest.raises(GroupValidationError):
            parse_group_spec(["[[1, 0, 2, 3, 4, 5]]"], cycle(6))
