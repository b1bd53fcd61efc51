"""Shared hypothesis strategies for board positions."""

from hypothesis import strategies as st

from biddinghex.board import Cell, Color, Position


@st.composite
def positions(draw, max_rows: int = 4, max_cols: int = 4, max_empty=None):
    """An arbitrary position, optionally with a capped number of empty cells."""
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    n = rows * cols
    chars = draw(st.lists(st.sampled_from(".AB"), min_size=n, max_size=n))
    if max_empty is not None:
        empties = [i for i, ch in enumerate(chars) if ch == "."]
        for i in empties[max_empty:]:
            chars[i] = draw(st.sampled_from("AB"))
    lookup = {".": None, "A": Color.AMBER, "B": Color.BLUE}
    return Position(rows=rows, cols=cols, cells=tuple(lookup[ch] for ch in chars))


@st.composite
def cells_of(draw, position: Position) -> Cell:
    r = draw(st.integers(0, position.rows - 1))
    c = draw(st.integers(0, position.cols - 1))
    return Cell(r, c)
