"""Monospace renderings of growth diagrams and marked tableaux.

The formats mirror the paper figures: a grid of shapes with arrows for the
non-degenerate strong steps (marking shown when > 1), entry crosses between
the rows, and French tableaux printed top row first with stars or primes on
marked components.
"""

from __future__ import annotations

from .cores import ribbon_components, skew_cells


def partition_str(lam):
    if not lam:
        return "."
    if lam[0] < 10:
        return "".join(str(p) for p in lam)
    return ",".join(str(p) for p in lam)


def render_growth(diagram, vertex_str=partition_str):
    n = diagram.n
    width = max(len(vertex_str(v)) for row in diagram.grid for v in row)
    slot = 5
    lines = []
    for i in range(n + 1):
        if i > 0:
            j = diagram.sigma.targets[i - 1]
            pos = j * (width + slot) - slot + slot // 2
            lines.append((" " * pos + "x").rstrip())
        parts = []
        for j in range(n + 1):
            if j > 0:
                if diagram.grid[i][j - 1] == diagram.grid[i][j]:
                    parts.append(" " * slot)
                else:
                    m = diagram.hmark[i][j]
                    parts.append("---->" if m == 1 else f"--{m}->"[:slot])
            parts.append(vertex_str(diagram.grid[i][j]).ljust(width))
        lines.append("".join(parts).rstrip())
    return "\n".join(lines)


def _fill_to_text(fill, shape, mark_char):
    rows = []
    for r in range(len(shape), 0, -1):
        cells = []
        for c in range(1, shape[r - 1] + 1):
            entry, marked = fill[(r, c)]
            cells.append(f"{entry}{mark_char}" if marked else str(entry))
        rows.append(" ".join(cells))
    return " / ".join(rows)


def llms_p_text(path):
    """Strong LLMS tableau: stars on every cell of each step's marked component."""
    fill = {}
    for k, step in enumerate(path.steps, start=1):
        comps = ribbon_components(step.upper, step.lower)
        marked = comps[step.marking - 1]
        for cell in skew_cells(step.upper, step.lower):
            fill[cell] = (k, cell in marked)
    return _fill_to_text(fill, path.shape, "*")


def weak_q_text(path):
    fill = {}
    for k, step in enumerate(path.steps, start=1):
        for cell in skew_cells(step.upper, step.lower):
            fill[cell] = (k, False)
    return _fill_to_text(fill, path.shape, "*")


def folded_p_text(path, inst):
    """Folded strong tableau: primes on the marked component when there is a choice."""
    fill = {}
    for k, step in enumerate(path.steps, start=1):
        comps = inst.strong_components(step.lower, step.upper)
        marked = comps[step.marking - 1] if len(comps) > 1 else frozenset()
        for cell in skew_cells(step.upper, step.lower):
            fill[cell] = (k, cell in marked)
    return _fill_to_text(fill, path.shape, "'")


def figure_text(diagram, p_text, q_text, extra=()):
    parts = [render_growth(diagram), "", f"P: {p_text}", f"Q: {q_text}"]
    for label, text in extra:
        parts.append(f"{label}: {text}")
    return "\n".join(parts) + "\n"
