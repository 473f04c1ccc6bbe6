import io

from axbc.bench import CSV_COLUMNS, bench_instance, instances, run, write_csv
from worked_examples import A1, B1, C1


def test_row_count_and_routes():
    rows = run(3, 4, seed=1)
    assert len(rows) == 8
    assert [r.route for r in rows[:2]] == ["direct", "kron"]
    assert all(r.wall_time_ns > 0 for r in rows)


def test_example_instance_ranks():
    rows = bench_instance(0, A1, B1, C1)
    assert {(r.m, r.n, r.k, r.l, r.a, r.b) for r in rows} == {(3, 2, 3, 3, 2, 2)}


def test_sweep_shapes():
    shapes = [A.shape + B.shape for A, B, _ in instances(3, 2, seed=0, sweep=True)]
    assert shapes == [(d, d, d, d) for d in (1, 2, 3) for _ in range(2)]


def test_kron_peak_grows_with_system_size():
    rows = run(5, 1, seed=2, sweep=True)
    kron_rows = [r for r in rows if r.route == "kron"]
    direct_rows = [r for r in rows if r.route == "direct"]
    for r in kron_rows:
        assert r.peak_entries >= (r.m * r.l) * (r.n * r.k)
    peaks = [r.peak_entries for r in kron_rows]
    assert peaks == sorted(peaks) and peaks[0] < peaks[-1]
    for d, k in zip(direct_rows, kron_rows):
        if d.m > 1:
            assert d.peak_entries < k.peak_entries


def test_csv_header():
    out = io.StringIO()
    write_csv(run(2, 1, seed=0), out)
    lines = out.getvalue().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 3
