"""SVG output for patches, with tiles shaded by type and lines drawn on top."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .tiling import Patch, to_xy

TYPE_FILL = {1: "#e9c46a", 2: "#2a9d8f", 3: "#e76f51"}
LINE_STROKE = "#1d3557"


def tile_polygon(tile) -> list[tuple[float, float]]:
    a, u, v, w = tile.corners()
    return [to_xy(p) for p in (a, u, w, v)]


def patch_svg(p: Patch, lines=(), scale: float = 20.0, margin: float = 1.0, title: str | None = None) -> str:
    """Render ``p`` in the real embedding; ``lines`` are lists of edges ``(u, w)``."""
    polys = [(t.tile_type, tile_polygon(t)) for t in p.tiles]
    xs = [x for _, poly in polys for x, _ in poly]
    ys = [y for _, poly in polys for _, y in poly]
    x0, x1 = min(xs) - margin, max(xs) + margin
    y0, y1 = min(ys) - margin, max(ys) + margin

    def pt(x, y):
        # svg y axis points down
        return f"{(x - x0) * scale:.3f},{(y1 - y) * scale:.3f}"

    w, h = (x1 - x0) * scale, (y1 - y0) * scale
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" height="{h:.1f}" '
           f'viewBox="0 0 {w:.3f} {h:.3f}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<g stroke="#333" stroke-width="0.6" stroke-linejoin="round">')
    for tt, poly in polys:
        coords = " ".join(pt(*q) for q in poly)
        out.append(f'<polygon class="tile type{tt}" fill="{TYPE_FILL[tt]}" points="{coords}"/>')
    out.append("</g>")
    if lines:
        out.append(f'<g fill="none" stroke="{LINE_STROKE}" stroke-width="3" stroke-linecap="round">')
        for ln in lines:
            segs = " ".join(f"M{pt(*to_xy(u))} L{pt(*to_xy(w))}" for u, w in ln)
            out.append(f'<path class="line" d="{segs}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def count_tiles(svg: str) -> int:
    return svg.count('class="tile ')
