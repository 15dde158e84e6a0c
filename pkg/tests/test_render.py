import numpy as np
import pytest

from conftest import FIXTURES, make, random_case
from bicvis import Layout, Palette, ValidationError, categorize, render_image, suggest
from bicvis.render import CellCategory, Zone, category_grid, decode_ppm, pixels


def test_categorize_d1(d1):
    a, bc, d = d1
    s = suggest(a, bc)
    assert categorize((1, 1), a, bc, s) == CellCategory(Zone.CLUSTERED, 1)
    assert categorize((2, 3), a, bc, s) == CellCategory(Zone.UNCLUSTERED, 1)
    assert categorize((3, 1), a, bc, s) == CellCategory(Zone.UNCLUSTERED, 0)
    assert categorize((2, 4), a, bc, s) == CellCategory(Zone.SUGGESTED, 0)
    # without suggestions the free column is plain unclustered
    assert categorize((1, 4), a, bc) == CellCategory(Zone.UNCLUSTERED, 1)


def test_categorize_suggested_row():
    a, bc, d = make(3, 2, [({1}, {1, 2})], {(1, 1), (1, 2), (3, 1)})
    s = suggest(a, bc)
    assert s.rows == {0: frozenset({3})}
    assert categorize((3, 2), a, bc, s) == CellCategory(Zone.SUGGESTED, 0)
    assert categorize((2, 2), a, bc, s) == CellCategory(Zone.UNCLUSTERED, 0)


def test_grid_matches_categorize(rng):
    for _ in range(30):
        a, bc, d, _ = random_case(rng, k_range=(0, 4))
        s = suggest(a, bc)
        grid = category_grid(a, bc, s)
        for r in range(1, a.m + 1):
            for c in range(1, a.n + 1):
                cat = categorize((r, c), a, bc, s)
                assert grid[r - 1, c - 1] == 2 * int(cat.zone) + 1 - cat.value


def test_single_bright_pixel():
    a, bc, d = make(1, 1, [], {(1, 1)})
    assert render_image(a, Layout.identity(d), bc, mode="two") == b"P3\n1 1\n255\n255 255 255\n"


def test_golden_d1(d1):
    a, bc, d = d1
    got = render_image(a, Layout.identity(d), bc, suggest(a, bc))
    assert got == (FIXTURES / "d1_identity.ppm").read_bytes()


def test_render_deterministic(rng):
    a, bc, d, _ = random_case(rng, k_range=(1, 4))
    lay = Layout.from_blocks(rng.sample(range(d.s), d.s), rng.sample(range(d.t), d.t), d)
    s = suggest(a, bc)
    assert render_image(a, lay, bc, s) == render_image(a, lay, bc, s)


def test_colour_counts(rng):
    for _ in range(20):
        a, bc, d, _ = random_case(rng, k_range=(1, 4))
        lay = Layout.identity(d)
        six = pixels(a, lay, bc, suggest(a, bc)).reshape(-1, 3)
        assert len({tuple(p) for p in six}) <= 6
        two = pixels(a, lay, bc, mode="two").reshape(-1, 3)
        expected = len({(r, c) in a.ones for r in range(1, a.m + 1) for c in range(1, a.n + 1)})
        assert len({tuple(p) for p in two}) == expected
    a, bc, d = make(2, 2, [], {(1, 1)})
    assert len({tuple(p) for p in pixels(a, Layout.identity(d), bc, mode="two").reshape(-1, 3)}) == 2


def test_permutation_correctness(rng):
    for _ in range(20):
        a, bc, d, _ = random_case(rng, k_range=(1, 4))
        lay = Layout.from_blocks(rng.sample(range(d.s), d.s), rng.sample(range(d.t), d.t), d)
        img = pixels(a, lay, bc, mode="two", palette=Palette(scale=2))
        assert img.shape == (2 * a.m, 2 * a.n, 3)
        for i, r in enumerate(lay.row_order):
            for j, c in enumerate(lay.col_order):
                want = 255 if (r, c) in a.ones else 0
                assert (img[2 * i:2 * i + 2, 2 * j:2 * j + 2] == want).all()


def test_palette_validation():
    with pytest.raises(ValidationError):
        Palette(clustered=((200, 200, 200), (10, 10, 10)))
    with pytest.raises(ValidationError):
        Palette(scale=0)
    with pytest.raises(ValidationError):
        Palette(unclustered=((0, 0, 300), (255, 255, 255)))
    p = Palette.from_json({"clustered": {"one": "#000000", "zero": "#FFFFFF"}}, scale=3)
    assert p.clustered == ((0, 0, 0), (255, 255, 255)) and p.scale == 3
    for one, zero in (p.clustered, p.suggested, p.unclustered):
        assert sum(one) < sum(zero)


def test_hull_outline(d1):
    a, bc, d = d1
    img = pixels(a, Layout.identity(d), bc, hull=1)
    red = (img == np.array([255, 0, 0], dtype=np.uint8)).all(axis=2)
    # cluster 2 spans rows 3-4 and columns 2-3: a 2x2 box is all border
    assert red.tolist() == [[False] * 4, [False] * 4, [False, True, True, False], [False, True, True, False]]
    with pytest.raises(ValidationError):
        pixels(a, Layout.identity(d), bc, hull=5)


def test_png_and_ppm_roundtrip(d1):
    import struct
    import zlib

    a, bc, d = d1
    img = pixels(a, Layout.identity(d), bc, suggest(a, bc), Palette(scale=3))
    assert (decode_ppm(render_image(a, Layout.identity(d), bc, suggest(a, bc), Palette(scale=3))) == img).all()
    png = render_image(a, Layout.identity(d), bc, suggest(a, bc), Palette(scale=3), fmt="png")
    assert png[:8] == b"\x89PNG\r\n\x1a\n"
    w, h = struct.unpack(">II", png[16:24])
    assert (w, h) == (12, 12)
    idat_len = struct.unpack(">I", png[33:37])[0]
    raw = zlib.decompress(png[41:41 + idat_len])
    rows = np.frombuffer(raw, dtype=np.uint8).reshape(12, 1 + 36)
    assert (rows[:, 0] == 0).all()
    assert (rows[:, 1:].reshape(12, 12, 3) == img).all()


def test_empty_matrix_rejected():
    with pytest.raises(ValidationError):
        make(0, 3, [])
