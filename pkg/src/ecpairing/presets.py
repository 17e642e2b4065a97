"""Named desk-scale contexts used by the tests and the CLI."""

from .curve import make_curve
from .fields import make_field
from .pairings import make_context
from .rng import named_rng


def tiny_f49(seed=0):
    """r = 2 on Y^2 = X^3 + X over F_7, torsion field F_49 (non-strict: 2 | 7 - 1)."""
    E = make_curve(make_field(7), a4=1, order=8)
    return make_context(E, 2, ext=2, rng=named_rng(seed, "tiny-f49"), name="tiny-f49")


def tiny_f25(seed=0):
    """r = 3 on the supersingular Y^2 = X^3 + 1 over F_5, k = 2."""
    E = make_curve(make_field(5), a6=1, order=6)
    return make_context(E, 3, rng=named_rng(seed, "tiny-f25"), name="tiny-f25")


def ss_f103(seed=0):
    """r = 13 on the supersingular Y^2 = X^3 + X over F_103, k = 2 (distortion (-x, iy))."""
    E = make_curve(make_field(103), a4=1, order=104)
    return make_context(E, 13, rng=named_rng(seed, "ss-f103"), name="ss-f103")


def k4_d4(seed=0):
    """r = 37 on Y^2 = X^3 + 8X over F_709 (t = 44), k = 4, quartic twist."""
    E = make_curve(make_field(709), a4=8, order=666)
    return make_context(E, 37, twist_d=4, rng=named_rng(seed, "k4-d4"), name="k4-d4")


def freeman_k10(seed=0):
    """Freeman k = 10 family at the smallest usable x0 (x0 = -2: p = 283, r = 251)."""
    from .optimal import FREEMAN_K10, family_instantiate

    _, ctx = family_instantiate(FREEMAN_K10, rng=named_rng(seed, "freeman-k10"))
    ctx.name = "freeman-k10"
    return ctx


PRESETS = {
    "tiny-f49": tiny_f49,
    "tiny-f25": tiny_f25,
    "ss-f103": ss_f103,
    "k4-d4": k4_d4,
    "freeman-k10": freeman_k10,
}


def preset(name, seed=0):
    try:
        return PRESETS[name](seed)
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
