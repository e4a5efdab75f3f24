"""Quick check of the Python bindings against known values.

    pip install --no-build-isolation -e crates/py
    python crates/py/python/smoke_test.py
"""

import ggdp


def main():
    bull = ggdp.bull()
    assert bull.n == 5 and bull.closed == [1, 2, 3, 4, 5]
    counts = [ggdp.count(bull, f"F{k}", 1) for k in range(1, 9)]
    assert counts == [16253, 205, 463, 43, 1668, 124, 68, 28], counts

    web = ggdp.web(8, 3, [1, 2, 3, 4, 5, 7])
    value, seq = ggdp.grundy_exact(web)
    assert value == 3 and ggdp.is_legal(web, seq)
    assert ggdp.web_grundy(8, 1, [1, 2, 3, 4, 5, 7]) == 6

    p4 = ggdp.path(4, [])
    assert ggdp.grundy_exact(p4)[0] == 4 == ggdp.path_grundy(4, [])

    same = ggdp.Instance.parse(bull.to_text())
    assert same.edges == bull.edges
    assert ggdp.dimension(bull) == 40
    assert ggdp.dimension(bull, "F3") == ggdp.p3_dimension(bull)

    c5 = ggdp.cycle(5)
    rep = ggdp.check_inequality(c5, "type1 u=1 w=2 i=3")
    assert rep["valid"] and rep["facet"] == rep["predicted"], rep
    point = "x 1 1 1\nx 1 2 0.5\ny 2 1 0.4\ny 2 2 0.3\n"
    cuts = ggdp.separate(c5, point)
    assert [c[0] for c in cuts] == ["type1 u=1 w=2 i=2"], cuts

    rb = ggdp.root_bound(c5, "F1", lb=1, rounds=3)
    assert rb["status"] == "optimal" and rb["bound_history"][0] >= 3 - 1e-6

    try:
        ggdp.Instance(3, [(1, 2)], [])
    except ValueError:
        pass
    else:
        raise AssertionError("isolated vertex outside C accepted")

    print("ok")


if __name__ == "__main__":
    main()
