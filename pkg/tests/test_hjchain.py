from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from atoric.exactmath import DomainError, cf_eval
from atoric.hjchain import (
    Move,
    MoveScript,
    blowdown,
    blowup,
    find_wahl_splits,
    k1a_parallelism,
    replay,
)
from atoric.lattice import parallel
from atoric.wedge import validate


class TestMoves:
    def test_blowup_interior(self):
        assert blowup((4, 3), 1) == (5, 1, 4)

    def test_blowup_ends(self):
        assert blowup((4, 3), 0) == (1, 5, 3)
        assert blowup((4, 3), 2) == (4, 4, 1)

    def test_blowup_empty(self):
        assert blowup((), 0) == (1,)

    def test_blowdown_inverse_examples(self):
        assert blowdown((1, 5, 3), 0) == (4, 3)
        assert blowdown((5, 1, 4), 1) == (4, 3)

    def test_blowdown_rejects_non_one(self):
        with pytest.raises(DomainError):
            blowdown((4, 3), 0)

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            blowup((4, 3), 3)
        with pytest.raises(DomainError):
            blowdown((4, 3), 2)

    @given(
        st.lists(st.integers(1, 9), min_size=0, max_size=8),
        st.integers(0, 8),
    )
    @settings(max_examples=150, deadline=None)
    def test_blowdown_undoes_blowup(self, entries, pos):
        chain = tuple(entries)
        if pos > len(chain):
            return
        assert blowdown(blowup(chain, pos), pos) == chain

    def test_blowup_preserves_cf_shift(self):
        # an end blow-up at 0 turns [b1,...] into [1, b1+1, ...]; the value
        # transforms projectively but the chain stays well-formed
        chain = (2, 5, 3)
        up = blowup(chain, 0)
        assert up == (1, 3, 5, 3)
        assert blowdown(up, 0) == chain


GOLDEN_SCRIPT = MoveScript(
    (
        Move("up", 0, (1, 5, 3)),
        Move("up", 0, (1, 2, 5, 3)),
        Move("down", 0, (1, 5, 3)),
        Move("up", 1, (2, 1, 6, 3)),
        Move("up", 2, (2, 2, 1, 7, 3)),
        Move("up", 2, (2, 3, 1, 2, 7, 3)),
        Move("up", 2, (2, 4, 1, 2, 2, 7, 3)),
        Move("up", 2, (2, 5, 1, 2, 2, 2, 7, 3)),
        Move("up", 3, (2, 5, 2, 1, 3, 2, 2, 7, 3)),
        Move("up", 3, (2, 5, 3, 1, 2, 3, 2, 2, 7, 3)),
    )
)


class TestReplay:
    def test_golden_script(self):
        final = replay((4, 3), GOLDEN_SCRIPT)
        assert final == (2, 5, 3, 1, 2, 3, 2, 2, 7, 3)

    def test_script_json_round_trip(self):
        j = GOLDEN_SCRIPT.to_json()
        assert j[0] == {"op": "up", "at": 0, "expect": [1, 5, 3]}
        assert MoveScript.from_json(j) == GOLDEN_SCRIPT

    def test_mismatch_reports_step(self):
        bad = MoveScript((Move("up", 0, (9, 9)),))
        with pytest.raises(DomainError, match="step 0"):
            replay((4, 3), bad)

    def test_unknown_op_rejected(self):
        with pytest.raises(DomainError):
            Move.from_json({"op": "sideways", "at": 0})


class TestWahlSplits:
    def test_golden_split_unique(self):
        splits = find_wahl_splits((2, 5, 3, 1, 2, 3, 2, 2, 7, 3))
        assert len(splits) == 1
        mc, lw, rw = splits[0]
        assert (mc.left, mc.c, mc.right) == ((2, 5, 3), 1, (2, 3, 2, 2, 7, 3))
        assert lw == (5, 3)
        assert rw == (14, 9)

    def test_no_split(self):
        assert find_wahl_splits((2, 2, 2)) == []

    def test_godeaux_boundary_split(self):
        splits = find_wahl_splits((2, 2, 6, 1, 3, 5, 2))
        assert [(lw, rw) for _, lw, rw in splits] == [((4, 3), (5, 2))]

    def test_split_blocks_evaluate_consistently(self):
        chain = (2, 5, 3, 1, 2, 3, 2, 2, 7, 3)
        (mc, (pl, ql), (pr, qr)) = find_wahl_splits(chain)[0]
        assert cf_eval(mc.left).p == pl * pl
        assert cf_eval(mc.right).p == pr * pr


class TestK1aParallelism:
    def test_quintic_step_witness(self):
        w = validate((5, 3, 14, 9, 1, Fraction(1, 14)))
        found, witness = k1a_parallelism(w)
        assert found
        idx, edge_dir, self_int = witness
        assert idx == 2
        assert parallel(edge_dir, (2, 5))
        assert self_int == -2

    def test_smooth_right_vertex(self):
        found, witness = k1a_parallelism(validate((1, 0, 1, 1, 1, 1)))
        assert not found and witness is None

    def test_holds_along_orbit(self):
        from atoric.mutate import mutate

        w = validate((1, 0, 5, 3, 1, 1))
        for _ in range(3):
            w = mutate(w, "right")
            found, witness = k1a_parallelism(w)
            assert found
            assert witness[2] == -2
