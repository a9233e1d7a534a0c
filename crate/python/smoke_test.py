"""Smoke test for the rubikmap extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import rubikmap

CUBE_ORDER = 43252003274489856000


def main():
    assert "cube" in rubikmap.catalog_names()

    cube = rubikmap.Map.catalog("cube")
    assert (cube.vertices, cube.edges, cube.faces, cube.genus) == (8, 12, 6, 0)

    g = rubikmap.RubikGroup(cube, seed=1)
    assert g.order() == CUBE_ORDER
    assert rubikmap.predicted_order(cube) == CUBE_ORDER
    assert all(g.contains(f) for f in g.generators())
    assert not g.contains("(1,2)")

    p = rubikmap.Puzzle(cube, seed=1)
    p.scramble(7, length=20)
    assert not p.is_solved()
    p.apply(p.solve())
    assert p.is_solved()
    p.move(2)
    p.move(2, -1)
    assert p.is_solved()

    try:
        p.move(7)
    except ValueError:
        pass
    else:
        raise AssertionError("face 7 should be rejected")

    prism3 = rubikmap.Map.catalog("prism3")
    report = rubikmap.verify(prism3, seed=1)
    assert report["pass"], report
    print("smoke test passed")


if __name__ == "__main__":
    main()
