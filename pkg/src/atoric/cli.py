"""Command-line interface for the wedge workbench.

Exit codes: 0 success, 2 validation error, 3 precondition failure,
4 scenario FAIL.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction

import click

from .exactmath import DomainError, cf_eval, cf_expand, frac_from_str, frac_to_str
from .flip import (
    NoIntegralFlip,
    antiflip_in_bounds,
    cohomology_path,
    flip as do_flip,
    initial_antiflip,
)
from .hjchain import MoveScript, blowdown, blowup, find_wahl_splits, replay
from .mori import budget as mori_budget
from .mori import generate, validate_seed
from .mutate import NotMutable, ObstructedCut, classify as do_classify, mutate as do_mutate
from .render import default_viewport, render_svg
from .scenarios import all_scenarios
from .wedge import WedgeParams, boundary_chain, invariants, realize, validate

PRECONDITION_ERRORS = (NotMutable, ObstructedCut, NoIntegralFlip)


def _parse_wedge(spec: str) -> WedgeParams:
    parts = spec.split(",")
    if len(parts) != 6:
        raise DomainError("wedge spec must be p1,q1,p2,q2,c,a")
    p1, q1, p2, q2, c = (int(x) for x in parts[:5])
    return validate((p1, q1, p2, q2, c, frac_from_str(parts[5])))


def _emit(ctx, payload: dict, text: str):
    out = json.dumps(payload, indent=2) if ctx.obj["json"] else text
    target = ctx.obj["out"]
    if target:
        with open(target, "w") as fh:
            fh.write(out + "\n")
    else:
        click.echo(out)


def _run(ctx, fn):
    try:
        fn()
    except PRECONDITION_ERRORS as e:
        click.echo(f"precondition failed: {e}", err=True)
        sys.exit(3)
    except DomainError as e:
        click.echo(f"invalid input: {e}", err=True)
        sys.exit(2)


@click.group()
@click.option("--json", "as_json", is_flag=True, help="emit JSON instead of text")
@click.option("--out", type=click.Path(), default=None, help="write output to a file")
@click.pass_context
def main(ctx, as_json, out):
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["out"] = out


@main.command()
@click.argument("spec")
@click.pass_context
def wedge(ctx, spec):
    """Invariants and boundary chain of the wedge SPEC = p1,q1,p2,q2,c,a."""

    def go():
        w = _parse_wedge(spec)
        inv = invariants(w)
        mc = boundary_chain(w)
        _emit(
            ctx,
            {"wedge": w.to_json(), "invariants": inv.to_json(), "chain": mc.to_json()},
            f"{w}\n  sigma={inv.sigma} Delta={inv.Delta} Omega={inv.Omega} "
            f"shear={inv.shear} K={'+' if inv.k_sign > 0 else '-' if inv.k_sign < 0 else '0'}\n"
            f"  chain {mc}",
        )

    _run(ctx, go)


@main.command("classify")
@click.argument("spec")
@click.option("--side", type=click.Choice(["left", "right"]), required=True)
@click.pass_context
def classify_cmd(ctx, spec, side):
    """Mutability of one side of the wedge."""

    def go():
        w = _parse_wedge(spec)
        m = do_classify(w, side)
        _emit(
            ctx,
            {"side": side, "status": m.status, "witness": str(m.witness)},
            f"{side}: {m.status} ({m.witness})",
        )

    _run(ctx, go)


@main.command("mutate")
@click.argument("spec")
@click.option("--side", type=click.Choice(["left", "right"]), required=True)
@click.pass_context
def mutate_cmd(ctx, spec, side):
    """One mutation step."""

    def go():
        w = _parse_wedge(spec)
        new = do_mutate(w, side)
        _emit(ctx, {"result": new.to_json()}, str(new))

    _run(ctx, go)


@main.command()
@click.option("--seed", required=True, help="p1,q1,p2,q2")
@click.option("--n", "n", type=int, default=6)
@click.option("--budget", "l2", default=None, help="check the budget against this l2")
@click.option("--a-minus", "a_minus", default=None, help="edge length for the budget wedge")
@click.pass_context
def mori(ctx, seed, n, l2, a_minus):
    """Mori sequence of a seed; optionally an affine-length budget."""

    def go():
        p1, q1, p2, q2 = (int(x) for x in seed.split(","))
        s = validate_seed(p1, q1, p2, q2)
        seq = generate(s, n)
        payload = seq.to_json()
        lines = [
            f"M({p1},{q1};{p2},{q2}) delta={s.delta} [{seq.classification}]",
            "  " + " ".join(f"({p},{q})" for p, q in seq.display_pairs()),
        ]
        if l2 is not None:
            a = frac_from_str(a_minus) if a_minus else Fraction(1)
            w = validate((s.p1, s.q1, s.p2, s.q2, 1, a))
            b = mori_budget(w, frac_from_str(l2), n)
            payload["budget"] = b.to_json()
            lines.append(
                f"  budget: {b.verdict}"
                + (f" (fits {b.fits_steps} steps)" if b.fits_steps is not None else "")
            )
        _emit(ctx, payload, "\n".join(lines))

    _run(ctx, go)


@main.command()
@click.argument("spec")
@click.option("--a-minus", "a_minus", required=True)
@click.option("--l1", default=None)
@click.option("--l2", default=None)
@click.pass_context
def antiflip(ctx, spec, a_minus, l1, l2):
    """Initial antiflip; with --l1/--l2, tracks the truncation bounds."""

    def go():
        w = _parse_wedge(spec)
        am = frac_from_str(a_minus)
        if l1 is not None and l2 is not None:
            res, bounds, cert = antiflip_in_bounds(w, frac_from_str(l1), frac_from_str(l2), am)
            payload = {
                "result": res.to_json(),
                "bounds": [frac_to_str(bounds[0]), frac_to_str(bounds[1])],
                "certificate": None if cert is None else cert.to_json(),
            }
            text = f"{res.minus}  bounds=({frac_to_str(bounds[0])}, {frac_to_str(bounds[1])})"
            if cert is not None:
                text += f"  budget={cert.verdict}"
        else:
            res = initial_antiflip(w, am)
            payload = {"result": res.to_json()}
            text = str(res.minus)
        _emit(ctx, payload, text)

    _run(ctx, go)


@main.command("flip")
@click.argument("spec")
@click.option("--a-plus", "a_plus", required=True)
@click.pass_context
def flip_cmd(ctx, spec, a_plus):
    """Flip a K-negative wedge back to K-positive (or find the -1-sphere)."""

    def go():
        w = _parse_wedge(spec)
        res = do_flip(w, frac_from_str(a_plus))
        if res.kind == "FlipTo":
            text = f"FlipTo {res.plus}"
        else:
            text = f"DivisorialContraction {res.sphere}"
        _emit(ctx, res.to_json(), text)

    _run(ctx, go)


@main.command()
@click.argument("spec")
@click.option("--a-minus", "a_minus", required=True)
@click.option("--l2", required=True)
@click.pass_context
def cohomology(ctx, spec, a_minus, l2):
    """Cohomology-class path endpoints and the certified gap window."""

    def go():
        w = _parse_wedge(spec)
        path = cohomology_path(w, frac_from_str(a_minus), frac_from_str(l2))
        _emit(
            ctx,
            path.to_json(),
            f"start={frac_to_str(path.start)} end={frac_to_str(path.end)} "
            f"distance={frac_to_str(path.affine_distance)} "
            f"gap=({frac_to_str(path.gap_low)}, {float(path.gap_high):.6f}]",
        )

    _run(ctx, go)


@main.command()
@click.argument("action", type=click.Choice(["eval", "expand", "blowup", "blowdown", "replay", "splits"]))
@click.argument("data")
@click.option("--at", type=int, default=None, help="position for blowup/blowdown")
@click.option("--script", default=None, help="JSON move script for replay")
@click.pass_context
def chain(ctx, action, data, at, script):
    """Chain calculus.  DATA is a comma-separated chain ('-' for empty) or a fraction for expand."""

    def parse_chain(s):
        return () if s in ("-", "") else tuple(int(x) for x in s.split(","))

    def go():
        if action == "eval":
            v = cf_eval(parse_chain(data))
            _emit(ctx, {"value": str(v)}, str(v))
        elif action == "expand":
            c = cf_expand(frac_from_str(data))
            _emit(ctx, {"chain": list(c)}, str(list(c)))
        elif action in ("blowup", "blowdown"):
            if at is None:
                raise DomainError("--at is required")
            fn = blowup if action == "blowup" else blowdown
            c = fn(parse_chain(data), at)
            _emit(ctx, {"chain": list(c)}, str(list(c)))
        elif action == "replay":
            if script is None:
                raise DomainError("--script is required")
            ms = MoveScript.from_json(json.loads(script))
            c = replay(parse_chain(data), ms)
            _emit(ctx, {"chain": list(c)}, str(list(c)))
        else:
            splits = find_wahl_splits(parse_chain(data))
            payload = [
                {"chain": mc.to_json(), "left_pq": list(lw), "right_pq": list(rw)}
                for mc, lw, rw in splits
            ]
            text = "\n".join(f"{mc}  left={lw} right={rw}" for mc, lw, rw in splits) or "(none)"
            _emit(ctx, {"splits": payload}, text)

    _run(ctx, go)


@main.command()
@click.argument("name", required=False)
@click.option("--all", "run_all", is_flag=True)
@click.pass_context
def scenario(ctx, name, run_all):
    """Run a named scenario (quintic, godeaux, cp2, k1a, branch-curve) or --all."""
    reg = all_scenarios()
    names = list(reg) if run_all else [name]
    if not run_all and (name is None or name not in reg):
        click.echo(f"unknown scenario; choose from {', '.join(reg)}", err=True)
        sys.exit(2)
    reports = [reg[n]() for n in names]
    payload = {"reports": [r.to_json() for r in reports]}
    text = "\n".join(r.render_text() for r in reports)
    _emit(ctx, payload, text)
    if not all(r.passed for r in reports):
        sys.exit(4)


@main.command()
@click.argument("spec")
@click.pass_context
def render(ctx, spec):
    """Render the wedge's decorated polygon as SVG (use --out for a file)."""

    def go():
        w = _parse_wedge(spec)
        poly = realize(w)
        svg = render_svg(poly, default_viewport(poly))
        target = ctx.obj["out"]
        if target:
            with open(target, "w") as fh:
                fh.write(svg)
        else:
            click.echo(svg, nl=False)

    _run(ctx, go)


@main.command()
@click.option("--bind", default=None, help="host:port (default from ATORIC_BIND or 127.0.0.1:8777)")
def serve(bind):
    """Serve the HTTP session API."""
    import uvicorn

    from .service import create_app

    addr = bind or os.environ.get("ATORIC_BIND", "127.0.0.1:8777")
    host, _, port = addr.partition(":")
    uvicorn.run(create_app(), host=host, port=int(port or "8777"), log_level="warning")


if __name__ == "__main__":
    main()
