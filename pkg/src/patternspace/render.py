"""SVG plots of finite patterns and of epsilon-nets.

Plots are for looking at; coordinates are rounded to 4 decimals and only
the geometry is meant to be stable between runs.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .errors import ValidationError
from .patterns import FinitePattern

_PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"]


def _f(x) -> str:
    return f"{float(x):.4f}".rstrip("0").rstrip(".")


def _colour(tag, tags) -> str:
    if tag is None:
        return _PALETTE[0]
    return _PALETTE[tags.index(tag) % len(_PALETTE)]


def _tags(P):
    return sorted({getattr(a, "label", None) if P.kind == "patch" else a.tag for a in P.atoms} - {None}, key=str)


def _frame(x0, y0, x1, y1, scale, body) -> str:
    w, h = (x1 - x0) * scale, (y1 - y0) * scale
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(x1 - x0)} {_f(y1 - y0)}">\n' + "\n".join(body) + "\n</svg>\n"
    )


def render_pattern(P: FinitePattern, scale: float = 40.0) -> str:
    """Ticks, intervals or letters on a line for 1D patterns; dots and boxes in 2D."""
    if not isinstance(P, FinitePattern):
        raise ValidationError("render needs a finite pattern; cut it to a window first")
    tags = _tags(P)
    xs, ys = [], []
    for a in P.atoms:
        if P.kind == "patch":
            xs += [float(a.lo[0]), float(a.hi[0])]
            if P.dim == 2:
                ys += [float(a.lo[1]), float(a.hi[1])]
        else:
            xs.append(float(a.pos[0]))
            if P.dim == 2:
                ys.append(float(a.pos[1]))
    if not xs:
        xs = [0.0]
    if P.dim == 2 and not ys:
        ys = [0.0]
    pad = 0.5
    x0, x1 = min(xs) - pad, max(xs) + pad
    body = []
    if P.dim == 1:
        y0, y1 = -0.5, 0.5
        stroke = _f(1.5 / scale)
        body.append(f'<line x1="{_f(x0)}" y1="0" x2="{_f(x1)}" y2="0" stroke="#999" stroke-width="{stroke}"/>')
        for a in P.atoms:
            if P.kind == "patch":
                c = _colour(a.label, tags)
                body.append(
                    f'<rect x="{_f(a.lo[0])}" y="-0.15" width="{_f(a.hi[0] - a.lo[0])}" height="0.3" '
                    f'fill="{c}" fill-opacity="0.4" stroke="{c}" stroke-width="{stroke}"/>'
                )
            elif P.kind == "symbolic":
                body.append(
                    f'<text x="{_f(a.pos[0])}" y="0.3" font-size="0.4" text-anchor="middle">{escape(str(a.tag))}</text>'
                )
            else:
                c = _colour(a.tag if P.kind == "multi" else None, tags)
                body.append(
                    f'<line x1="{_f(a.pos[0])}" y1="-0.2" x2="{_f(a.pos[0])}" y2="0.2" stroke="{c}" stroke-width="{stroke}"/>'
                )
        return _frame(x0, y0, x1, y1, scale, body)
    y0, y1 = min(ys) - pad, max(ys) + pad
    stroke = _f(1.0 / scale)
    for a in P.atoms:
        if P.kind == "patch":
            c = _colour(a.label, tags)
            # flip y so the picture has the usual orientation
            body.append(
                f'<rect x="{_f(a.lo[0])}" y="{_f(y0 + y1 - float(a.hi[1]))}" '
                f'width="{_f(a.hi[0] - a.lo[0])}" height="{_f(a.hi[1] - a.lo[1])}" '
                f'fill="{c}" fill-opacity="0.4" stroke="{c}" stroke-width="{stroke}"/>'
            )
        else:
            c = _colour(a.tag if P.kind == "multi" else None, tags)
            body.append(
                f'<circle cx="{_f(a.pos[0])}" cy="{_f(y0 + y1 - float(a.pos[1]))}" r="0.08" fill="{c}"/>'
            )
    return _frame(x0, y0, x1, y1, scale, body)


def render_net(shifts, net, scale: float = 20.0) -> str:
    """Sample points in order along a line, net centres in red, and an arc from
    each sample to its assigned centre."""
    n = len(shifts)
    if n == 0:
        raise ValidationError("nothing to render")
    centers = set(net.centers)
    body = []
    stroke = _f(1 / scale)
    for i in range(n):
        c = net.assignment[i]
        if c != i:
            h = 0.25 + 0.05 * abs(c - i)
            body.append(
                f'<path d="M {i} 0 Q {_f((i + c) / 2)} {_f(-h)} {c} 0" fill="none" stroke="#bbb" stroke-width="{stroke}"/>'
            )
    for i in range(n):
        fill = _PALETTE[3] if i in centers else "#666"
        body.append(f'<circle cx="{i}" cy="0" r="0.15" fill="{fill}"/>')
    top = -1 - 0.05 * n
    return _frame(-1, top, n, 1, scale, body)
