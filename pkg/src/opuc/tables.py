"""Zero tables and plot data for the worked examples.

Each table is a list of columns ``(label, polynomial)``; roots are computed
with :func:`opuc.cpoly.roots` and written one row per root, ``-`` padding the
shorter columns.
"""

from __future__ import annotations

import csv
import functools
import io

import numpy as np

from .cpoly import CPoly
from .measure import ChristoffelLebesgue, Lebesgue
from .popuc_chain import popuc, popuc_lc, r_polys
from .szego import family_from_alphas, family_from_measure

DECIMALS = 6
TABLE_N = 7


@functools.lru_cache(maxsize=None)
def _fam(gamma: complex):
    return family_from_measure(ChristoffelLebesgue(gamma), TABLE_N)


def _quasi(gamma, n, a):
    f = _fam(gamma)
    return f.phi[n] - a * f.phi[n - 1]


def table_columns(which: int) -> list[tuple[str, CPoly]]:
    if which == 1:
        f = _fam(1.0)
        return [
            ("Phi_5(z;1)", f.phi[5]),
            ("Phi_6(z;1)", f.phi[6]),
            ("PhiQ_5(z;1;1/(n+1)-i)", _quasi(1.0, 5, 1 / 6 - 1j)),
            ("PhiQ_6(z;1;-1.16)", _quasi(1.0, 6, -1.16)),
            ("PhiQ_5(z;1;n/(n+1))", _quasi(1.0, 5, 5 / 6)),
        ]
    if which == 2:
        f = _fam(1j)
        return [
            ("Phi_4(z;i)", f.phi[4]),
            ("Phi_5(z;i)", f.phi[5]),
            ("PhiQ_4(z;i;(n+1)i/n)", _quasi(1j, 4, 1.25j)),
            ("PhiQ_5(z;i;1.1)", _quasi(1j, 5, 1.1)),
            ("PhiQ_4(z;i;ni/(n+1))", _quasi(1j, 4, 0.8j)),
        ]
    if which == 3:
        return [(f"PhiP_{n}(z;1;{g})", popuc_lc(n, g)) for n, g in ((6, 0.9), (7, 0.2), (6, 2), (7, 9.1))]
    raise ValueError(f"no table {which}; choose 1, 2 or 3")


def table_roots(which: int) -> list[tuple[str, np.ndarray]]:
    return [(label, p.roots()) for label, p in table_columns(which)]


def fmt_real(x: float) -> str:
    s = f"{x:.{DECIMALS}f}"
    return "0.000000" if s == "-0.000000" else s


def fmt_complex(z: complex) -> str:
    """``a``, ``bi`` or ``a+bi`` at six decimals; parts that round to zero are dropped."""
    re_ = fmt_real(z.real)
    im = fmt_real(z.imag)
    if im == "0.000000":
        return re_
    if re_ == "0.000000":
        return f"{im}i"
    sign = "" if im.startswith("-") else "+"
    return f"{re_}{sign}{im}i"


def table_csv(which: int) -> str:
    cols = table_roots(which)
    rows = max(len(r) for _, r in cols)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([label for label, _ in cols])
    for k in range(rows):
        writer.writerow([fmt_complex(r[k]) if k < len(r) else "-" for _, r in cols])
    return out.getvalue()


def figure_series(which: int) -> list[tuple[str, CPoly]]:
    """Point sets behind the four zero plots, tagged by series name."""
    if which in (1, 2):
        return table_columns(which)
    if which in (3, 4):
        n, g = (6, 0.9) if which == 3 else (7, 0.2)
        leb = family_from_alphas(Lebesgue(normalized=True), [0.0] * n)
        r = r_polys(np.zeros(n + 1), np.full(n + 1, 0.25), n)[n]
        return [
            (f"PhiP_{n}(z;1;{g})", popuc_lc(n, g)),
            (f"PhiP_{n}(z;1)", popuc(leb, n, 1.0)),
            (f"R_{n}(z)", r),
        ]
    raise ValueError(f"no figure {which}; choose 1 to 4")


def plot_data_csv(which: int) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["series", "re", "im"])
    for label, p in figure_series(which):
        for z in p.roots():
            writer.writerow([label, fmt_real(z.real), fmt_real(z.imag)])
    return out.getvalue()
