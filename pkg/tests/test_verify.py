from fracsum import verify


def test_quick_suite_passes():
    results = verify.run(quick=True)
    assert [r.key for r in results] == ["1", "2", "3", "4", "6"]
    assert all(r.passed for r in results)


def test_table_layout():
    rows = [verify.CheckResult("1", "demo", True, "0", "< 1"),
            verify.CheckResult("2", "other", False, "5", "< 1")]
    table = verify.format_table(rows).splitlines()
    assert "PASS" in table[1] and "FAIL" in table[2]
    assert table[-1] == "1/2 passed"


def test_corpus_has_twenty_sequences():
    corpus = verify.dual_corpus(32)
    assert len(corpus) == 20
    assert all(len(v) == 32 for v in corpus.values())


def test_naive_lorentz_small_case():
    grid = verify.naive_lorentz([1.0, 3.0, 5.0], 1)
    assert grid[1, 0] == 2.0 and grid[1, 1] == 4.0
