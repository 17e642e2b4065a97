"""JSON forms of contexts, points and pairing values."""

import json

from .curve import Curve, point_from_json
from .fields import Field
from .pairings import PairingContext, make_context


def context_to_json(ctx: PairingContext) -> dict:
    data = {
        "name": ctx.name,
        "curve": ctx.E.descriptor(),
        "r": ctx.r,
        "k": ctx.k,
        "ext": ctx.ext,
        "L": ctx.L.descriptor(),
        "G1": ctx.G1_gen.to_json(),
        "G2": ctx.G2_gen.to_json(),
    }
    if ctx.twist is not None:
        data["twist_d"] = ctx.twist.d
    if getattr(ctx, "x0", None) is not None:
        data["x0"] = ctx.x0
    return data


def context_from_json(data: dict) -> PairingContext:
    E = Curve.from_descriptor(data["curve"])
    L = Field.from_descriptor(data["L"])
    G1 = point_from_json(E, data["G1"], L)
    G2 = point_from_json(E, data["G2"], L)
    ext = int(data.get("ext", data["k"]))
    ctx = make_context(E, int(data["r"]), k=int(data["k"]), G1=G1, G2=G2,
                       twist_d=data.get("twist_d"), ext=ext, name=data.get("name"), L=L)
    if "x0" in data:
        ctx.x0 = int(data["x0"])
    return ctx


def save_context(ctx, path):
    with open(path, "w") as fh:
        json.dump(context_to_json(ctx), fh, indent=1)
        fh.write("\n")


def load_context(path) -> PairingContext:
    with open(path) as fh:
        return context_from_json(json.load(fh))


def parse_point(ctx, text):
    """'infinity', a JSON object {"x": .., "y": ..}, or 'x,y' with integer coordinates."""
    text = text.strip()
    if text in ("infinity", "O", "0"):
        return ctx.E.infinity
    if text.startswith("{"):
        return point_from_json(ctx.E, json.loads(text), ctx.L)
    x, y = text.split(",")
    return ctx.E.point(ctx.L(int(x)), ctx.L(int(y)))
