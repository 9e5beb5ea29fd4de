"""Tests for the parameter grid and grid execution."""

from gcyclo.services.grid import grid_parameters, run_grid
from gcyclo.services.lc_engine import predict_lc
from gcyclo.services.progress import progress_manager


class TestGridParameters:
    """Test grid enumeration."""

    def test_empty_range(self):
        """No odd prime is at most 2."""
        assert grid_parameters(2, 1) == ([], [])

    def test_small_grid_order(self):
        """p <= 7, n = 1: every valid (e, b) sorted by (p, e, n, b)."""
        rows, skipped = grid_parameters(7, 1)
        assert skipped == []
        assert [(r.p, r.e, r.n, r.b) for r in rows] == [
            (3, 1, 1, 0),
            (3, 1, 1, 1),
            (5, 1, 1, 0),
            (5, 1, 1, 1),
            (5, 1, 1, 2),
            (5, 1, 1, 3),
            (5, 2, 1, 0),
            (5, 2, 1, 1),
            (7, 3, 1, 0),
            (7, 3, 1, 1),
        ]

    def test_all_b(self):
        """The full offset sweep covers d_n values of b."""
        rows, _ = grid_parameters(7, 1, all_b=True)
        assert len(rows) == 10
        rows, _ = grid_parameters(5, 2, all_b=True)
        assert sum(1 for r in rows if (r.p, r.e, r.n) == (5, 2, 2)) == 10
        assert sum(1 for r in rows if (r.p, r.e, r.n) == (5, 1, 2)) == 20

    def test_offsets_sampled(self):
        """Without all_b the offsets are {0, 1, d_n/2, d_n - 1}."""
        rows, _ = grid_parameters(7, 2)
        assert sorted(r.b for r in rows if (r.p, r.e, r.n) == (7, 3, 2)) == [0, 1, 7, 13]

    def test_period_cap(self):
        """Exponents stop once p^n passes the cap."""
        rows, _ = grid_parameters(13, 5, cap_period=200)
        assert max(r.period for r in rows) <= 200
        assert {(r.p, r.n) for r in rows if r.p == 3} == {(3, 1), (3, 2), (3, 3), (3, 4)}

    def test_wieferich_skipped(self):
        """1093 is reported, not enumerated."""
        rows, skipped = grid_parameters(1093, 1, cap_period=1)
        assert rows == []
        assert skipped == [1093]


class TestRunGrid:
    """Test sequential and parallel execution."""

    def test_sequential(self):
        """Every row agrees with the prediction."""
        rows, _ = grid_parameters(13, 2)
        reports = run_grid(rows, methods=("bm", "gcd"), workers=1, job_id="grid-sequential")
        assert len(reports) == len(rows)
        for report in reports:
            assert report.agree
            assert report.measured_bm == predict_lc(report.params)

        progress = progress_manager.get_progress("grid-sequential")
        assert progress.status == "completed"
        assert progress.completed == len(rows)
        assert progress.failed == 0

    def test_parallel_matches_sequential(self):
        """Worker processes produce the same sorted reports."""
        rows, _ = grid_parameters(11, 2)
        sequential = run_grid(rows, methods=("bm",), workers=1)
        parallel = run_grid(rows, methods=("bm",), workers=2, job_id="grid-parallel")
        assert parallel == sequential
        assert progress_manager.get_progress("grid-parallel").percent == 100.0
