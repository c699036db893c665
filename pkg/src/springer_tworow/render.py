"""Deterministic ASCII and SVG pictures of dotted matchings and classes.

Arcs are drawn above a baseline at heights given by nesting depth, rays
run to the top of the canvas, and dots are filled circles at arc apexes
and ray midpoints (rays are always pinned, so they always carry one).
Output depends only on the input and RENDER_VERSION, byte for byte.
"""
from __future__ import annotations

from .homology import HomClass
from .matchings import DottedMatching

RENDER_VERSION = "1"


def _arc_height(arc, arcs) -> int:
    i, j = arc
    return 1 + sum(1 for p, q in arcs if i < p and q < j)


def render_ascii(M: DottedMatching) -> str:
    n = M.n
    arcs = M.base.arcs
    heights = {arc: _arc_height(arc, arcs) for arc in arcs}
    top = max(list(heights.values()) + [1]) + 1
    width = 4 * n - 3
    grid = [[" "] * width for _ in range(top + 1)]

    def col(v: int) -> int:
        return 4 * (v - 1)

    dotted = set(M.dotted)
    for arc in arcs:
        i, j = arc
        h = heights[arc]
        row = top - h
        for x in range(col(i) + 1, col(j)):
            grid[row][x] = "_"
        for r in range(row + 1, top + 1):
            grid[r][col(i)] = "|"
            grid[r][col(j)] = "|"
        if arc in dotted:
            grid[row][(col(i) + col(j)) // 2] = "*"
    for v in M.base.rays:
        for r in range(0, top + 1):
            grid[r][col(v)] = "|"
        grid[top // 2][col(v)] = "*"
    labels = [" "] * width
    for v in range(1, n + 1):
        text = str(v)
        labels[col(v): col(v) + len(text)] = list(text)
    lines = ["".join(row).rstrip() for row in grid] + ["".join(labels).rstrip()]
    return "\n".join(line for line in lines)


def render_class_ascii(x: HomClass) -> str:
    if x.is_zero:
        return "0"
    blocks = []
    for idx, (M, c) in enumerate(x.terms):
        sign = "-" if c < 0 else ("+" if idx else "")
        label = f"{sign}{abs(c)}·" if (abs(c) != 1 or idx or c < 0) else ""
        art = render_ascii(M)
        blocks.append(f"{label}\n{art}" if label else art)
    return "\n".join(blocks)


def _svg_arc(i: int, j: int, h: int, dotted: bool, dx: int = 0) -> list[str]:
    x1, x2 = dx + 40 * i, dx + 40 * j
    y = 20 * h + 10
    parts = [
        f'<path d="M {x1} 200 Q {(x1 + x2) // 2} {200 - 2 * y} {x2} 200" '
        f'fill="none" stroke="black" stroke-width="2"/>'
    ]
    if dotted:
        apex_y = 200 - y
        parts.append(
            f'<circle cx="{(x1 + x2) // 2}" cy="{apex_y}" r="4" fill="black"/>'
        )
    return parts


def _svg_body(M: DottedMatching, dx: int = 0) -> list[str]:
    n = M.n
    parts = [
        f'<line x1="{dx + 20}" y1="200" x2="{dx + 40 * n + 20}" y2="200" '
        'stroke="gray" stroke-width="1"/>'
    ]
    dotted = set(M.dotted)
    arcs = M.base.arcs
    for arc in arcs:
        parts.extend(
            _svg_arc(arc[0], arc[1], _arc_height(arc, arcs), arc in dotted, dx)
        )
    for v in M.base.rays:
        x = dx + 40 * v
        parts.append(
            f'<line x1="{x}" y1="200" x2="{x}" y2="10" stroke="black" stroke-width="2"/>'
        )
        parts.append(f'<circle cx="{x}" cy="105" r="4" fill="black"/>')
    for v in range(1, n + 1):
        parts.append(
            f'<text x="{dx + 40 * v}" y="216" font-size="12" text-anchor="middle">{v}</text>'
        )
    return parts


def _svg_document(width: int, body: list[str]) -> str:
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="220" data-render-version="{RENDER_VERSION}">',
    ]
    return "\n".join(head + body + ["</svg>"])


def render_svg(M: DottedMatching) -> str:
    return _svg_document(40 * (M.n + 1), _svg_body(M))


def render_class_svg(x: HomClass) -> str:
    """One document; terms side by side with signed coefficient labels."""
    if x.is_zero:
        return _svg_document(80, ['<text x="10" y="110" font-size="14">0</text>'])
    body: list[str] = []
    dx = 0
    for idx, (M, c) in enumerate(x.terms):
        sign = "-" if c < 0 else ("+" if idx else "")
        label = f"{sign}{abs(c)}·"
        body.append(f'<text x="{dx + 10}" y="110" font-size="14">{label}</text>')
        dx += 40
        body.extend(_svg_body(M, dx))
        dx += 40 * (M.n + 1)
    return _svg_document(dx, body)
