"""Command line interface: ``hilbnef {wall,nef,critdiv,scan,dp1,replay}``.

Result documents go to stdout as JSON with every rational written ``p/q``;
a one-line human summary goes to stderr.  Exit codes: 0 certified, 2
inconclusive, 1 error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

from .chern import Slice, discriminant, ideal_sheaf, line_bundle, mumford_slope
from .config import SurfaceConfig, build_surface, config_from_mapping, load_config
from .errors import ConfigError, HilbNefError, PreconditionError
from .gieseker import critical_divisors, gieseker_wall
from .hilb import extremality_certificate, intersect, nef_divisor_from_wall, pencil, w_sigma_vector
from .lattice import DivisorClass, SurfaceData
from .walls import accumulation_point, numerical_wall

__all__ = ["main", "fmt", "Job", "cmd_wall", "cmd_nef", "cmd_critdiv", "cmd_scan", "cmd_dp1", "run"]

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


def fmt(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _qvec(D: DivisorClass) -> list[str]:
    return [fmt(c) for c in D]


def _ivec(D: DivisorClass) -> list[int]:
    return list(D.as_ints())


def _parse_vector(text: str, name: str, integral: bool) -> DivisorClass:
    out = []
    for part in text.replace(" ", "").split(","):
        if not part or "." in part or "e" in part.lower():
            raise ConfigError(f"bad entry {part!r}; use integers{'' if integral else ' or p/q'}", field=name)
        try:
            q = Fraction(part)
        except ValueError:
            raise ConfigError(f"bad entry {part!r}", field=name) from None
        if integral and q.denominator != 1:
            raise ConfigError("entries must be integers", field=name)
        out.append(q)
    return DivisorClass(out)


@dataclass
class Job:
    """A fully resolved request: surface plus slice data, echoed into the output."""

    config: SurfaceConfig
    surface: SurfaceData
    n: int | None
    twist: DivisorClass
    polarization: DivisorClass
    nef_ray: DivisorClass | None

    def slice(self) -> Slice:
        return Slice(self.surface, self.polarization, self.twist)

    def echo(self) -> dict:
        return {
            "config": self.config.to_mapping(),
            "n": self.n,
            "twist": _ivec(self.twist),
            "polarization": _qvec(self.polarization),
            "nef_ray": None if self.nef_ray is None else _ivec(self.nef_ray),
        }


def resolve_job(cfg: SurfaceConfig, n=None, twist=None, polarization=None, nef_ray=None) -> Job:
    """Fill in the default slice: ``(H, -aH)`` on rank one, ``(P(n), K)`` on dp1."""
    surface = build_surface(cfg)
    r = surface.rank
    for label, D in (("twist", twist), ("polarization", polarization), ("nef_ray", nef_ray)):
        if D is not None and D.rank != r:
            raise ConfigError(f"expected {r} entries, got {D.rank}", field=label)
    if nef_ray is not None and cfg.preset != "dp1":
        raise ConfigError("only the dp1 preset takes a nef ray", field="nef_ray")
    if twist is None:
        if cfg.preset == "dp1":
            twist = surface.canonical
        elif r == 1:
            twist = -surface.effective_generators[0]
        else:
            raise ConfigError("a twist is required for custom surfaces of rank > 1", field="twist")
    if polarization is None:
        if cfg.preset == "dp1":
            from .dp1 import default_nef_ray, dp1_slice

            if n is None:
                raise PreconditionError("the dp1 slice depends on n; pass --n")
            nef_ray = default_nef_ray() if nef_ray is None else nef_ray
            polarization = dp1_slice(n, nef_ray).h
        elif r == 1:
            polarization = DivisorClass([1])
        else:
            polarization = surface.ample_reference
    return Job(cfg, surface, n, twist, polarization, nef_ray)


def _wall_json(w) -> dict:
    return {
        "kind": w.kind,
        "center": None if w.center is None else fmt(w.center),
        "radius_sq": None if w.radius_sq is None else fmt(w.radius_sq),
    }


def _need_n(job: Job) -> int:
    if job.n is None or job.n < 1:
        raise PreconditionError("n must be a positive integer")
    return job.n


def _wall_section(job: Job):
    n = _need_n(job)
    sl = job.slice()
    res = gieseker_wall(sl, n)
    v = ideal_sheaf(n, job.surface.rank)
    doc = {
        "input": job.echo(),
        "wall": _wall_json(res.wall),
        "certificate": str(res.certificate),
        "destabilizers": [_ivec(L) for L in res.destabilizers],
        "jordan_holder_unique": res.jordan_holder_unique,
        "degenerate": res.degenerate,
        "diagnostics": {
            "eta": fmt(res.eta),
            "varrho": fmt(res.varrho),
            "delta": fmt(discriminant(v, sl)),
            "mu": fmt(mumford_slope(v, sl)),
        },
    }
    return sl, res, doc


def cmd_wall(job: Job):
    _, res, doc = _wall_section(job)
    doc = {"command": "wall", **doc}
    code = EXIT_OK if res.certified else EXIT_INCONCLUSIVE
    summary = f"wall: {res.wall.kind} center {doc['wall']['center']} radius^2 {doc['wall']['radius_sq']} [{res.certificate}]"
    return doc, code, summary


def cmd_nef(job: Job):
    sl, res, doc = _wall_section(job)
    doc = {"command": "nef", **doc}
    n = job.n
    surface = job.surface
    if not res.certified:
        doc.update(nef_divisor=None, dual_curve=None, extremality=None, w_sigma=None)
        return doc, EXIT_INCONCLUSIVE, "nef: wall not certified, no divisor issued"
    div = nef_divisor_from_wall(res.wall.center, sl)
    certs = [(L, extremality_certificate(surface, L, n)) for L in res.destabilizers]
    L, ext = next(((L, c) for L, c in certs if c.certified), certs[0])
    curve = pencil(surface, L)
    pairings = [intersect(div, pencil(surface, M), n, surface) for M in res.destabilizers]
    w = None
    if surface.chi_O is not None:
        ws = w_sigma_vector(res.wall.center, sl, ideal_sheaf(n, surface.rank))
        w = {"rank": fmt(ws.rank), "c1": _qvec(ws.c1), "ch2": fmt(ws.ch2)}
    doc.update(
        nef_divisor={"l_part": _qvec(div.l_part), "b_half": fmt(div.b_half_coeff)},
        dual_curve={
            "kind": "pencil",
            "class": _ivec(L),
            "genus": fmt(curve.genus),
            "pairing": fmt(intersect(div, curve, n, surface)),
            "all_destabilizer_pairings_zero": all(p == 0 for p in pairings),
        },
        extremality={
            "kind": ext.kind,
            "description": ext.description,
            "threshold": None if ext.threshold is None else fmt(ext.threshold),
            "inequality": ext.inequality,
        },
        w_sigma=w,
    )
    summary = f"nef: ({' '.join(doc['nef_divisor']['l_part'])})^[n] - B/2 [{res.certificate}, {ext.kind}]"
    return doc, EXIT_OK, summary


def cmd_critdiv(job: Job):
    crit = critical_divisors(job.slice())
    doc = {
        "command": "critdiv",
        "input": job.echo(),
        "degenerate": crit.degenerate,
        "count": len(crit),
        "members": [_ivec(L) for L in crit],
    }
    return doc, EXIT_OK, f"critdiv: {len(crit)} critical divisors"


def _dec(q: Fraction) -> Decimal:
    return Decimal(q.numerator) / Decimal(q.denominator)


def scan_rows(job: Job) -> list[dict]:
    """Every critical wall, the higher-rank radius bound around the largest one,
    and the accumulation point (as a circle centered at ``mu`` of radius^2 ``2 Delta``)."""
    n = _need_n(job)
    sl, res, _ = _wall_section(job)
    v = ideal_sheaf(n, job.surface.rank)
    rows = []
    with localcontext() as ctx:
        ctx.prec = 12

        def row(label, center, rsq):
            return {
                "label": label,
                "center": fmt(center),
                "radius_sq": fmt(rsq),
                "decimal_center": str(+_dec(center)),
                "decimal_radius": str(_dec(rsq).sqrt()),
            }

        for L in critical_divisors(sl):
            w = numerical_wall(v, line_bundle(job.surface, -L), sl)
            if w.is_semicircle:
                rows.append(row(f"O(-L) L={_ivec(L)}", w.center, w.radius_sq))
        if res.wall.is_semicircle:
            rows.append(row("higher-rank-bound", res.wall.center, res.varrho))
        mu, two_delta = accumulation_point(v, sl)
        rows.append(row("accumulation", mu, two_delta))
    return rows


def _csv_text(rows) -> str:
    buf = io.StringIO()
    wr = csv.DictWriter(buf, ["label", "center", "radius_sq", "decimal_center", "decimal_radius"], lineterminator="\n")
    wr.writeheader()
    wr.writerows(rows)
    return buf.getvalue()


def _svg_text(rows, window=None, mu=None) -> str:
    circles = [(float(Fraction(r["center"])), float(r["decimal_radius"]), r["label"]) for r in rows]
    if window is None:
        lo = min(c - r for c, r, _ in circles)
        hi = max(c + r for c, r, _ in circles)
        pad = 0.05 * (hi - lo or 1.0)
        lo, hi = lo - pad, hi + pad
    else:
        lo, hi = (float(x) for x in window)
    top = max([r for _, r, _ in circles] + [1e-9]) * 1.1
    W, Hpx = 800, 400
    sx = W / (hi - lo)
    sy = Hpx / top

    def X(b):
        return (b - lo) * sx

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{Hpx + 20}" viewBox="0 0 {W} {Hpx + 20}">',
        f'<line x1="0" y1="{Hpx}" x2="{W}" y2="{Hpx}" stroke="black"/>',
    ]
    if mu is not None and lo <= mu <= hi:
        parts.append(f'<line x1="{X(mu):.3f}" y1="0" x2="{X(mu):.3f}" y2="{Hpx}" stroke="gray" stroke-dasharray="4"/>')
    colors = {"higher-rank-bound": "red", "accumulation": "blue"}
    for c, r, label in circles:
        color = colors.get(label, "black")
        parts.append(
            f'<path d="M {X(c - r):.3f} {Hpx} A {r * sx:.3f} {r * sy:.3f} 0 0 1 {X(c + r):.3f} {Hpx}" '
            f'fill="none" stroke="{color}"><title>{label}</title></path>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_scan(job: Job, csv_path=None, svg_path=None, window=None):
    rows = scan_rows(job)
    text = _csv_text(rows)
    if svg_path:
        mu = float(mumford_slope(ideal_sheaf(job.n, job.surface.rank), job.slice()))
        Path(svg_path).write_text(_svg_text(rows, window, mu))
    if csv_path:
        Path(csv_path).write_text(text)
    n_walls = sum(r["label"].startswith("O(-L)") for r in rows)
    return text, EXIT_OK, f"scan: {n_walls} critical walls, {len(rows)} rows"


def cmd_dp1(n: int, nef_ray=None):
    from .dp1 import verify_dp1_theorems

    rep = verify_dp1_theorems(n, nef_ray)
    doc = {
        "command": "dp1",
        "input": {"n": n, "nef_ray": _ivec(rep.nef_ray)},
        "reference_ray": rep.reference_ray,
        "passed": rep.passed,
        "checks": {k: {"passed": c.passed, "detail": c.detail} for k, c in rep.checks.items()},
        "wall_center": None if rep.wall_center is None else fmt(rep.wall_center),
        "certificate": rep.certificate,
        "critical_count": rep.critical_count,
        "destabilizers": [_ivec(L) for L in rep.destabilizers],
        "n2_extras": [_ivec(L) for L in rep.n2_extras],
    }
    summary = f"dp1 n={n}: {'all checks passed' if rep.passed else 'FAILED ' + ', '.join(rep.failures())}"
    return doc, EXIT_OK if rep.passed else EXIT_ERROR, summary


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _job_from_echo(echo: dict) -> Job:
    cfg = config_from_mapping(echo["config"])
    nef = echo.get("nef_ray")
    return resolve_job(
        cfg,
        echo.get("n"),
        DivisorClass(echo["twist"]),
        DivisorClass([Fraction(x) for x in echo["polarization"]]),
        None if nef is None else DivisorClass(nef),
    )


def replay(doc: dict):
    """Rerun the command recorded in a result document."""
    command = doc.get("command")
    echo = doc.get("input")
    if echo is None:
        raise ConfigError("not a result document", field="input")
    if command == "dp1":
        nef = echo.get("nef_ray")
        return cmd_dp1(echo["n"], None if nef is None else DivisorClass(nef))
    fn = {"wall": cmd_wall, "nef": cmd_nef, "critdiv": cmd_critdiv}.get(command)
    if fn is None:
        raise ConfigError(f"cannot replay command {command!r}", field="command")
    return fn(_job_from_echo(echo))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hilbnef", description="Gieseker walls and nef divisors on Hilbert schemes of points.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def surface_args(sp, n_required):
        g = sp.add_argument_group("surface")
        g.add_argument("--config", help="TOML or JSON surface document")
        g.add_argument("--preset", choices=["p3-hypersurface", "cyclic-cover", "dp1"])
        g.add_argument("--d", type=int)
        g.add_argument("--e", type=int)
        g.add_argument("--a", type=int, help="rank one: use the twist -aH")
        g.add_argument("--chi-o", type=int, dest="chi_o")
        s = sp.add_argument_group("slice")
        s.add_argument("--n", type=int, required=n_required)
        s.add_argument("--twist", help="comma separated integers")
        s.add_argument("--polarization", help="comma separated integers or p/q")
        s.add_argument("--nef-ray", dest="nef_ray", help="dp1 only; default H-E1")

    for name, helptext in (("wall", "Gieseker wall and its certificate"), ("nef", "nef divisor, dual curve, extremality")):
        surface_args(sub.add_parser(name, help=helptext), True)
    surface_args(sub.add_parser("critdiv", help="list the critical divisors"), False)
    sp = sub.add_parser("scan", help="CSV/SVG of all critical walls")
    surface_args(sp, True)
    sp.add_argument("--csv")
    sp.add_argument("--svg")
    sp.add_argument("--window", help="beta range lo:hi for the SVG, integers or p/q")
    sp = sub.add_parser("dp1", help="verify the degree-1 del Pezzo closed forms")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--nef-ray", dest="nef_ray")
    sp = sub.add_parser("replay", help="rerun the command recorded in a result document")
    sp.add_argument("document")
    return p


def _config_from_args(args) -> SurfaceConfig:
    if args.config and args.preset:
        raise ConfigError("use either --config or --preset")
    if args.config:
        if any(x is not None for x in (args.d, args.e, args.chi_o)):
            raise ConfigError("--d/--e/--chi-o only apply with --preset")
        return load_config(args.config)
    if not args.preset:
        raise ConfigError("one of --config or --preset is required")
    params = {k: v for k, v in (("d", args.d), ("e", args.e), ("chi_O", args.chi_o)) if v is not None}
    return config_from_mapping({"name": args.preset, "preset": args.preset, "preset_params": params})


def _job_from_args(args) -> Job:
    cfg = _config_from_args(args)
    twist = None if args.twist is None else _parse_vector(args.twist, "twist", True)
    if args.a is not None:
        if twist is not None:
            raise ConfigError("use either --a or --twist")
        if args.a < 1:
            raise ConfigError("a must be positive", field="a")
        twist = DivisorClass([-args.a])
    pol = None if args.polarization is None else _parse_vector(args.polarization, "polarization", False)
    nef = None if args.nef_ray is None else _parse_vector(args.nef_ray, "nef_ray", True)
    return resolve_job(cfg, args.n, twist, pol, nef)


def run(argv=None) -> tuple[str, int, str]:
    """Parse ``argv`` and run; returns (stdout text, exit code, summary)."""
    args = build_parser().parse_args(argv)
    if args.command == "replay":
        try:
            doc = json.loads(Path(args.document).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read result document: {exc}") from None
        out, code, summary = replay(doc)
        return _dump(out), code, summary
    if args.command == "dp1":
        nef = None if args.nef_ray is None else _parse_vector(args.nef_ray, "nef_ray", True)
        out, code, summary = cmd_dp1(args.n, nef)
        return _dump(out), code, summary
    job = _job_from_args(args)
    if args.command == "scan":
        window = None
        if args.window:
            try:
                window = tuple(Fraction(x) for x in args.window.split(":"))
            except ValueError:
                raise ConfigError("window must be lo:hi", field="window") from None
            if len(window) != 2 or window[0] >= window[1]:
                raise ConfigError("window must be lo:hi with lo < hi", field="window")
        return cmd_scan(job, args.csv, args.svg, window)
    fn = {"wall": cmd_wall, "nef": cmd_nef, "critdiv": cmd_critdiv}[args.command]
    out, code, summary = fn(job)
    return _dump(out), code, summary


def main(argv=None) -> int:
    try:
        out, code, summary = run(argv)
    except HilbNefError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(out)
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
