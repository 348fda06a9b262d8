"""Deterministic vector output for x-ray curves.

SVG documents map the rectangle onto a 1000-unit-tall canvas with six
significant digits per coordinate and a fixed header, so identical inputs
produce byte-identical files.  Thick curves are stroked at twice the thin
width and the critical strip 0 <= sigma <= 1 is shaded when visible.
Point-cloud and curve-inventory formats serve external plotting.
"""

import json
from dataclasses import dataclass

__all__ = ["RenderStyle", "render_svg", "point_cloud", "curve_inventory"]

_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'


@dataclass(frozen=True)
class RenderStyle:
    shade_strip: bool = True
    axes: bool = True
    labels: bool = True
    markers: bool = True
    thin_width: float = 1.2
    margin: float = 40.0
    strip_fill: str = "#e8e8e8"
    curve_color: str = "#000000"
    axis_color: str = "#9090b0"


def _fmt(x):
    # normalize negative zero so output never depends on its sign
    return "%.6g" % (float(x) + 0.0)


class _Mapper:
    def __init__(self, rect, margin):
        self.rect = rect
        self.scale = 1000.0 / rect.height
        self.margin = margin
        self.w = rect.width * self.scale + 2 * margin
        self.h = 1000.0 + 2 * margin

    def x(self, sigma):
        return self.margin + (sigma - self.rect.sigma_min) * self.scale

    def y(self, t):
        return self.margin + (self.rect.t_max - t) * self.scale

    def pt(self, z):
        return "%s,%s" % (_fmt(self.x(z.real)), _fmt(self.y(z.imag)))


def render_svg(curves, rect, singularities=(), gram_points=(), style=None):
    """Render curves and markers into an SVG string.

    An empty curve list still yields a valid document with axes.
    gram_points are (sigma, t) pairs drawn as small open circles.
    """
    st = style or RenderStyle()
    m = _Mapper(rect, st.margin)
    out = [_HEADER]
    out.append('<svg xmlns="http://www.w3.org/2000/svg" width="%s" height="%s" '
               'viewBox="0 0 %s %s">\n' % (_fmt(m.w), _fmt(m.h), _fmt(m.w), _fmt(m.h)))
    out.append('<rect x="0" y="0" width="%s" height="%s" fill="#ffffff"/>\n'
               % (_fmt(m.w), _fmt(m.h)))
    if st.shade_strip and rect.sigma_max > 0.0 and rect.sigma_min < 1.0:
        x0 = m.x(max(0.0, rect.sigma_min))
        x1 = m.x(min(1.0, rect.sigma_max))
        out.append('<rect x="%s" y="%s" width="%s" height="%s" fill="%s"/>\n'
                   % (_fmt(x0), _fmt(m.y(rect.t_max)), _fmt(x1 - x0),
                      _fmt(1000.0), st.strip_fill))
    if st.axes:
        if rect.t_min < 0.0 < rect.t_max:
            out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"/>\n'
                       % (_fmt(m.x(rect.sigma_min)), _fmt(m.y(0.0)),
                          _fmt(m.x(rect.sigma_max)), _fmt(m.y(0.0)),
                          st.axis_color, _fmt(0.5 * st.thin_width)))
        if rect.sigma_min < 0.0 < rect.sigma_max:
            out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" stroke-width="%s"/>\n'
                       % (_fmt(m.x(0.0)), _fmt(m.y(rect.t_max)),
                          _fmt(m.x(0.0)), _fmt(m.y(rect.t_min)),
                          st.axis_color, _fmt(0.5 * st.thin_width)))
    for c in curves:
        width = 2.0 * st.thin_width if c.kind == "thick" else st.thin_width
        pts = list(c.points) + ([c.points[0]] if c.closed else [])
        coords = " ".join(m.pt(z) for z in pts)
        out.append('<polyline points="%s" fill="none" stroke="%s" stroke-width="%s"/>\n'
                   % (coords, st.curve_color, _fmt(width)))
        if st.labels and c.line_number is not None:
            zlab = c.points[0]
            for z in c.points:
                if abs(z.real + 1.0) < abs(zlab.real + 1.0):
                    zlab = z
            out.append('<text x="%s" y="%s" font-size="14" fill="#404040">%d</text>\n'
                       % (_fmt(m.x(zlab.real) + 4.0), _fmt(m.y(zlab.imag) - 4.0),
                          c.line_number))
    if st.markers:
        for s in singularities:
            x, y = m.x(s.point.real), m.y(s.point.imag)
            if s.type == "zero":
                out.append('<circle cx="%s" cy="%s" r="3.5" fill="#000000"/>\n'
                           % (_fmt(x), _fmt(y)))
            elif s.type == "pole":
                out.append('<rect x="%s" y="%s" width="7" height="7" fill="none" '
                           'stroke="#000000" stroke-width="1.2"/>\n'
                           % (_fmt(x - 3.5), _fmt(y - 3.5)))
            else:  # saddle: a small cross
                out.append('<path d="M %s %s L %s %s M %s %s L %s %s" '
                           'stroke="#000000" stroke-width="1.2" fill="none"/>\n'
                           % (_fmt(x - 3.5), _fmt(y - 3.5), _fmt(x + 3.5), _fmt(y + 3.5),
                              _fmt(x - 3.5), _fmt(y + 3.5), _fmt(x + 3.5), _fmt(y - 3.5)))
        for gp in gram_points:
            out.append('<circle cx="%s" cy="%s" r="4.5" fill="none" stroke="#000000" '
                       'stroke-width="1.2"/>\n' % (_fmt(m.x(gp[0])), _fmt(m.y(gp[1]))))
    out.append("</svg>\n")
    return "".join(out)


def point_cloud(curves):
    """One "sigma t kind" row per polyline vertex, in curve order."""
    rows = []
    for c in curves:
        for z in c.points:
            rows.append("%s %s %s" % (_fmt(z.real), _fmt(z.imag), c.kind))
    return "\n".join(rows) + ("\n" if rows else "")


def _r9(x):
    return round(float(x), 9) + 0.0


def curve_inventory(curves):
    """Line-delimited records: kind, line_number, closed, points, endpoints,
    crossing_numbers, singularities.  Field order is fixed."""
    lines = []
    for c in curves:
        rec = {
            "kind": c.kind,
            "line_number": c.line_number,
            "closed": bool(c.closed),
            "n_points": len(c.points),
            "start": [_r9(c.points[0].real), _r9(c.points[0].imag)],
            "end": [_r9(c.points[-1].real), _r9(c.points[-1].imag)],
            "crossing_numbers": list(c.crossing_numbers),
            "singularities": [
                {"type": s["type"],
                 "sigma": _r9(s["point"].real),
                 "t": _r9(s["point"].imag)}
                for s in c.attached_singularities
            ],
            "flags": list(c.flags),
        }
        lines.append(json.dumps(rec, separators=(",", ":")))
    return "\n".join(lines) + ("\n" if lines else "")
