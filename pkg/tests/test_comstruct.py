"""Faces, facets, classification, zones, and the projection calculus."""

import random

import pytest

from omcube.comstruct import (
    are_parallel,
    classify,
    enumerate_faces,
    face_projection,
    face_report,
    facets,
    parallel_gallery,
    zones,
)
from omcube.corpus import even_cycle, gen_realizable_com, gen_uniform_om, path, product
from omcube.corpus import Arrangement, generic_vectors
from omcube.errors import PreconditionError
from omcube.family import Family, is_ample, vc_dim
from omcube.signvec import separator

C6 = even_cycle(3)


def cube(d):
    return Family(d, range(1 << d))


def random_coms(count, seed, max_m=6):
    """Generic realizable COMs (arrangement + open region), deterministic."""
    rng = random.Random(seed)
    out = []
    attempt = 0
    while len(out) < count:
        attempt += 1
        m = rng.randint(3, max_m)
        r = rng.randint(2, min(4, m))
        region = tuple(
            (tuple(rng.randint(-3, 3) for _ in range(r)), rng.randint(-2, 2))
            for _ in range(rng.randint(0, 2))
        )
        try:
            vecs = generic_vectors(m, r, seed=seed * 1000 + attempt)
            fam = gen_realizable_com(Arrangement(r, vecs, region))
        except Exception:
            continue
        if len(fam) >= 3:
            out.append(fam)
    return out


class TestEnumerateFaces:
    def test_q2_has_nine(self):
        faces = enumerate_faces(cube(2))
        assert len(faces) == 9  # |{+,-,0}^2|
        assert sum(f.dim == 0 for f in faces) == 4
        assert sum(f.dim == 1 for f in faces) == 4
        assert sum(f.dim == 2 for f in faces) == 1

    def test_c6_has_thirteen(self):
        faces = enumerate_faces(C6)
        # a rank-2 uniform OM on 3 elements: 6 topes + 6 edges + the whole
        assert len(faces) == 13
        assert sum(f.dim == 0 for f in faces) == 6
        assert sum(f.dim == 1 for f in faces) == 6
        assert sum(f.dim == 3 for f in faces) == 1

    def test_small_path(self):
        faces = enumerate_faces(Family(2, [0, 1, 3]))
        assert len(faces) == 5  # 3 vertices + 2 edges

    def test_faces_of_com_match_arrangement_covectors(self):
        from omcube.corpus import covectors_of_arrangement

        arr = Arrangement(3, generic_vectors(4, 3, seed=1))
        system = covectors_of_arrangement(arr)
        fam = Family(4, [x.plus for x in system if x.is_tope()])
        got = {str(f.covector) for f in enumerate_faces(fam)}
        assert got == {str(x) for x in system}

    def test_all_faces_gated(self):
        for fam in (cube(2), C6, product(even_cycle(3), path(2))):
            assert all(f.gated for f in enumerate_faces(fam))

    def test_rejects_non_partial_cube(self):
        with pytest.raises(PreconditionError):
            enumerate_faces(Family(2, [0, 3]))


class TestFacets:
    def test_q2_single_maximal_face(self):
        fs = facets(cube(2))
        assert len(fs) == 1 and fs[0].topes == cube(2)

    def test_c8p3_two_prisms(self, c8p3):
        fs = facets(c8p3)
        assert len(fs) == 2
        for f in fs:
            assert len(f.topes) == 16
            rep = classify(f.topes)
            assert rep.OM and rep.vcd == 3 and not rep.UOM

    def test_rd_is_its_own_maximal_face(self, rd_family):
        fs = facets(rd_family)
        assert len(fs) == 1 and fs[0].topes == rd_family


class TestClassify:
    def test_cubes(self):
        for d in range(4):
            rep = classify(cube(d))
            assert rep.COM and rep.OM and rep.UOM and rep.CUOM and rep.AMP
            assert rep.vcd == rep.rank == d

    def test_rd(self, rd_family):
        rep = classify(rd_family)
        assert rep.OM and rep.UOM and rep.CUOM and not rep.AMP
        assert rep.vcd == rep.rank == 3

    def test_c8p3(self, c8p3):
        rep = classify(c8p3)
        assert rep.COM and not rep.OM and not rep.CUOM
        assert rep.vcd == 3 and rep.rank is None

    def test_c6(self):
        rep = classify(C6)
        assert rep.OM and rep.UOM and rep.vcd == rep.rank == 2

    def test_non_partial_cube(self):
        rep = classify(Family(2, [0, 3]))
        assert not rep.partial_cube and not rep.COM
        assert "partial_cube" in rep.reasons

    def test_vcd_is_max_face_vcd(self):
        for fam in random_coms(8, seed=77):
            rep = classify(fam)
            assert rep.COM
            assert rep.vcd == max(vc_dim(f.topes) for f in enumerate_faces(fam))

    def test_uom_proper_convex_subgraphs_ample(self):
        # halfspaces of a UOM of vcd d are ample with vcd <= d-1
        from omcube.pcube import PCube, restrict_halfspace

        _, fam = gen_uniform_om(5, 3, seed=9)
        g = PCube(fam)
        for e in g.theta_classes():
            for side in (-1, 1):
                half = restrict_halfspace(g, e, side).family
                assert is_ample(half, "counting")
                assert vc_dim(half) <= 2

    def test_uom_tope_count_formula(self):
        from omcube.family import phi

        for (m, r, seed) in ((3, 2, 5), (4, 3, 1), (5, 3, 9), (5, 4, 2)):
            _, fam = gen_uniform_om(m, r, seed)
            assert len(fam) == 2 * phi(r - 1, m - 1)

    def test_uom_closed_under_contraction(self):
        from omcube.pcube import PCube, contract_coordinate

        _, fam = gen_uniform_om(5, 3, seed=9)
        g = PCube(fam)
        for e in g.theta_classes():
            rep = classify(contract_coordinate(g, e).family)
            assert rep.UOM

    def test_vcd2_coms_in_q4_are_cuoms(self):
        from omcube.corpus import enumerate_partial_cubes

        for _, fam in enumerate_partial_cubes(4):
            rep = classify(fam)
            if rep.COM and rep.vcd == 2:
                assert rep.CUOM


class TestZones:
    def test_q2(self):
        z = zones(cube(2), 1)
        assert z.carrier == cube(2)
        assert len(z.half_carrier_minus) == len(z.half_carrier_plus) == 2

    def test_c6_carrier_is_whole(self):
        # the zero covector lies in every hyperplane of an OM, so the
        # carrier is everything and half-carriers equal halfspaces
        z = zones(C6, 1)
        assert z.carrier == C6
        assert len(z.half_carrier_minus) == len(z.half_carrier_plus) == 3
        assert z.half_carrier_minus == z.halfspace_minus

    def test_rd_half_carriers_ample(self, rd_family):
        for e in range(1, 5):
            z = zones(rd_family, e)
            assert is_ample(z.half_carrier_minus, "counting")
            assert is_ample(z.half_carrier_plus, "counting")

    def test_c8p3_half_carrier_detects_non_cuom(self, c8p3):
        # along a path coordinate the half-carriers are C_8 layers: not ample
        z = zones(c8p3, 5)
        assert not is_ample(z.half_carrier_plus, "counting") or not is_ample(
            z.half_carrier_minus, "counting"
        )

    def test_needs_com(self):
        bad = Family(2, [0, 1, 3])  # path: a COM actually; use a non-COM
        from omcube.corpus import family_from_key  # noqa: F401

        non_com = Family(5, [0, 1, 2, 4, 8, 16, 3, 5, 9, 17, 6])
        rep = classify(non_com)
        if rep.COM:
            pytest.skip("fixture became a COM")
        with pytest.raises(PreconditionError):
            zones(non_com, 1)


class TestFaceProjection:
    def test_identity(self):
        faces = enumerate_faces(C6)
        f = faces[0]
        assert face_projection(C6, f, f) == f

    def test_prism_layers(self):
        prism = product(even_cycle(3), path(2))
        faces = enumerate_faces(prism)
        layers = [f for f in faces if f.dim == 3]
        assert len(layers) == 2
        p = face_projection(prism, layers[0], layers[1])
        assert p == layers[0]
        assert separator(layers[0].covector, layers[1].covector).bit_count() == 1

    def test_c8p3_facet_projections(self, c8p3):
        fs = facets(c8p3)
        p01 = face_projection(c8p3, fs[0], fs[1])
        p10 = face_projection(c8p3, fs[1], fs[0])
        # the shared C_8 and its parallel copy at distance 1
        assert len(p01.topes) == 8 and len(p10.topes) == 8
        assert are_parallel(p01, p10)
        d = separator(fs[0].covector, fs[1].covector).bit_count()
        assert d == 1

    def test_parallel_iff_same_support(self):
        faces = enumerate_faces(C6)
        for fx in faces:
            for fy in faces:
                assert are_parallel(fx, fy) == (
                    fx.covector.support == fy.covector.support
                )

    def test_gallery_between_parallel_edges(self):
        faces = enumerate_faces(C6)
        edges = [f for f in faces if f.dim == 1]
        for fx in edges:
            for fy in edges:
                if are_parallel(fx, fy):
                    g = parallel_gallery(C6, fx, fy)
                    assert g is not None
                    assert len(g) == separator(fx.covector, fy.covector).bit_count() + 1

    def test_projection_properties_on_generated_coms(self):
        # distances, containment in cube projections, parallelism of the
        # two mutual projections: asserted inside face_projection
        for fam in random_coms(5, seed=31, max_m=5):
            faces = enumerate_faces(fam)
            for fx in faces:
                for fy in faces:
                    face_projection(fam, fx, fy)


class TestFaceReport:
    def test_shape(self):
        faces = enumerate_faces(C6)
        rep = face_report(faces[0], faces)
        assert set(rep) == {"covector", "topes", "flags"}
        assert set(rep["flags"]) == {"cube", "uom", "gated"}

    def test_gate_formula(self):
        # the gate of a tope in an enclosing face cube is the composition
        from omcube.pcube import PCube, gate
        from omcube.signvec import SignVector, compose

        fam = product(even_cycle(3), path(2))
        g = PCube(fam)
        for face in enumerate_faces(fam):
            for t in fam:
                tope_vec = SignVector(fam.m, t, ~t & ((1 << fam.m) - 1))
                expected = compose(face.covector, tope_vec).plus
                got = gate(g, t, face.topes)
                assert got == expected
