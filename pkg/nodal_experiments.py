#!/usr/bin/env python3
"""Reproducible nodal-domain experiments on Kaluza-Klein circle bundles."""

import math
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional

import numpy as np
import typer
from alive_progress import alive_bar
from pydantic import ValidationError

from classes.chart_grid import ChartGrid
from classes.equivariant_field import BasePoint, EquivariantField
from classes.hopf_eigenfunction import HopfEigenfunction
from classes.manifold_tag import CaseTag, FrontGluing, ManifoldTag
from classes.modular_solid import FundamentalSolid, capped_field, phi_series
from classes.nodal_counter import NodalCounter
from classes.partition_graph import LayeredGraph, PartitionPair
from classes.q_series import QSeries
from classes.report_writer import ReportWriter, RunSummary
from classes.run_config import Command, RunConfig
from classes.torus_basis import TORUS2, TorusBasis
from modules.errors import NodalToolkitError
from modules.maass_operators import HyperbolicPatch, MaassOperators
from modules.random_fields import RandomFieldFactory
from modules.winding import Winding

app = typer.Typer(help="Count nodal domains of equivariant eigenfunctions.")

CSV_FIELDS = ["face", "x", "y", "theta", "sign", "label"]
SPHERE_CASES = ((2, 0, 1), (4, 1, 1), (6, 1, 2))
FIBER_WEIGHTS = (1, 2, 3, 24)
SPHERE_TOL = 1e-4
MAASS_TOL = 1e-5
IDENTITY_TOL = 1e-4
GRAM_TOL = 1e-12
MAASS_PATCH = HyperbolicPatch(center=complex(0.1, 1.1), h=1e-3)

RES_OPTION = typer.Option(None, "--res", help="Resolution AxBxC (each axis at least 8).")
THREADS_OPTION = typer.Option(None, "--threads", help="Slabs labeled concurrently.")
ZERO_TOL_OPTION = typer.Option(None, "--zero-tol", help="Samples this small count as zero.")
SEED_OPTION = typer.Option(None, "--seed", help="Seed of the randomized suite.")
SAMPLES_OPTION = typer.Option(None, "--samples", help="Size of the randomized suite.")
OUT_OPTION = typer.Option(None, "--out", help="Write the JSON summary here instead of stdout.")
TIMING_OPTION = typer.Option(False, "--omit-timing", help="Leave elapsed_ms out of the summary.")


def _status(ok: bool, message: str) -> None:
    typer.echo(f"{'✓' if ok else '✗'} {message}", err=True)


def _load(command: Command, **cli: Any) -> RunConfig:
    """Merge the configuration sources, exiting with a diagnostic if invalid."""
    if cli.get("omit_timing") is False:
        cli["omit_timing"] = None
    try:
        return RunConfig.load(command, **cli)
    except ValidationError as e:
        typer.echo(f"Error: invalid configuration for {command.value}:", err=True)
        for error in e.errors():
            location = ".".join(str(part) for part in error["loc"])
            typer.echo(f"  {location}: {error['msg']}", err=True)
        raise typer.Exit(code=1)


@contextmanager
def _diagnostics() -> Iterator[None]:
    """Turn toolkit and validation errors into an ``Error:`` line and exit status 1."""
    try:
        yield
    except (NodalToolkitError, ValidationError) as e:
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=1)


def _finish(config: RunConfig, results: dict[str, Any], passed: bool, started: float) -> None:
    """Write the summary and exit nonzero unless every check passed."""
    summary = RunSummary(
        command=config.command.value,
        params=config.params(),
        results=results,
        converged=passed,
        elapsed_ms=round((time.perf_counter() - started) * 1000.0, 3),
    )
    ReportWriter(config.out, config.omit_timing).write_summary(summary)
    _status(passed, "All checks passed." if passed else "Some checks failed.")
    if not passed:
        raise typer.Exit(code=1)


@app.command("torus-basis")
def torus_basis(
    max_freq: Optional[int] = typer.Option(None, "--max-freq", help="Largest frequency."),
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Enumerate the flat three-torus eigenbasis and check its orthogonality.
    """
    config = _load(Command.TORUS_BASIS, max_freq=max_freq, out=out, omit_timing=omit_timing)
    started = time.perf_counter()

    with _diagnostics():
        elements = TorusBasis.enumerate_basis(config.max_freq)
        gram = TorusBasis.gram_matrix(elements, n_quad=8 * config.max_freq, normalize=True)
        off_diagonal = float(np.max(np.abs(gram - np.diag(np.diag(gram)))))
        by_case = {case.value: sum(1 for e in elements if e.case is case) for case in CaseTag}

        _status(True, f"Enumerated {len(elements)} basis elements.")
        orthogonal = off_diagonal < GRAM_TOL
        _status(orthogonal, f"Largest off-diagonal Gram entry: {off_diagonal:.3e}")

        results = {
            "count": len(elements),
            "counts_by_case": by_case,
            "gram_max_off_diagonal": off_diagonal,
            "shared_eigenvalues": sorted(TorusBasis.shared_eigenvalues(elements)),
            "elements": TorusBasis.export(elements),
        }
        _finish(config, results, orthogonal, started)


@app.command("torus-count")
def torus_count(
    max_freq: Optional[int] = typer.Option(None, "--max-freq", help="Largest frequency."),
    resolution: Optional[str] = RES_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    zero_tol: Optional[float] = ZERO_TOL_OPTION,
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Count the nodal domains of every non-constant torus basis element.
    """
    config = _load(
        Command.TORUS_COUNT,
        max_freq=max_freq,
        resolution=resolution,
        threads=threads,
        zero_tol=zero_tol,
        out=out,
        omit_timing=omit_timing,
    )
    config = config.with_defaults(resolution=(12 * config.max_freq,) * 3)
    started = time.perf_counter()

    with _diagnostics():
        counter = NodalCounter(threads=config.threads, zero_tol=config.zero_tol)
        elements = [
            e for e in TorusBasis.enumerate_basis(config.max_freq) if e.case is not CaseTag.CONSTANT
        ]
        rows = []
        with alive_bar(len(elements), title="Counting elements", file=sys.stderr) as bar:
            for position, element in enumerate(elements):
                bar.text(f"-> {element.case.value} {element.frequencies}")
                count = counter.count_nodal_domains(
                    element.evaluate, ManifoldTag.TORUS3, config.resolution
                )
                rows.append(
                    {
                        "index": position,
                        "case": element.case.value,
                        "frequencies": list(element.frequencies),
                        "n_pos": count.n_pos,
                        "n_neg": count.n_neg,
                        "total": count.total,
                        "converged": count.converged,
                    }
                )
                bar()

        failures = [r["index"] for r in rows if r["total"] != 2 or not r["converged"]]
        _status(not failures, f"{len(rows) - len(failures)}/{len(rows)} elements have two domains.")
        results = {"elements": rows, "failures": failures, "all_two": not failures}
        _finish(config, results, not failures, started)


@app.command("t2-count")
def t2_count(
    m: Optional[int] = typer.Option(None, "--m", help="Largest frequency of the sweep."),
    resolution: Optional[str] = RES_OPTION,
    threads: Optional[int] = THREADS_OPTION,
    zero_tol: Optional[float] = ZERO_TOL_OPTION,
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Count nodal domains of sin(2 pi m x) sin(2 pi m y) on the two-torus.
    """
    config = _load(
        Command.T2_COUNT,
        m=m,
        resolution=resolution,
        threads=threads,
        zero_tol=zero_tol,
        out=out,
        omit_timing=omit_timing,
    )
    config = config.with_defaults(m=3)
    config = config.with_defaults(resolution=(16 * config.m, 16 * config.m))
    started = time.perf_counter()

    with _diagnostics():
        counter = NodalCounter(threads=config.threads, zero_tol=config.zero_tol)
        rows = []
        for k in range(1, config.m + 1):

            def product(x: np.ndarray, y: np.ndarray, k: int = k) -> np.ndarray:
                return np.sin(2.0 * math.pi * k * x) * np.sin(2.0 * math.pi * k * y)

            count = counter.count_nodal_domains(product, ManifoldTag.TORUS2, config.resolution)
            expected = 4 * k * k
            ok = count.total == expected and count.converged
            _status(ok, f"m={k}: {count.total} domains (expected {expected})")
            rows.append(
                {"m": k, "total": count.total, "expected": expected, "converged": count.converged}
            )

        passed = all(r["total"] == r["expected"] and r["converged"] for r in rows)
        _finish(config, {"products": rows}, passed, started)


@app.command("modular-tau")
def modular_tau(
    n: Optional[int] = typer.Option(None, "--n", help="Number of coefficients."),
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Print the coefficients of the discriminant form and check its Maass weight.
    """
    config = _load(Command.MODULAR_TAU, n=n, out=out, omit_timing=omit_timing)
    started = time.perf_counter()

    with _diagnostics():
        tau = QSeries.delta(config.n).coeffs
        _status(True, f"tau(1..{config.n}) = {tau}")

        # y^6 Delta is annihilated by D_6 - 30
        sampler = QSeries.delta().as_field().base
        fit = MaassOperators.maass_scan(sampler, range(-12, 13), MAASS_PATCH)
        identity = MaassOperators.identity_residual(6, sampler, MAASS_PATCH)
        maass_ok = fit.weight == 6 and abs(fit.eigenvalue - 30) < 1e-4 and fit.residual < MAASS_TOL
        _status(maass_ok, f"Maass fit: w={fit.weight}, c={fit.eigenvalue.real:.6f}, residual {fit.residual:.2e}")
        _status(identity < IDENTITY_TOL, f"Raising/lowering identity residual {identity:.2e}")

        results = {
            "tau": tau,
            "maass": fit.model_dump(mode="json"),
            "identity_residual": identity,
        }
        _finish(config, results, maass_ok and identity < IDENTITY_TOL, started)


@app.command("modular-count")
def modular_count(
    resolution: Optional[str] = RES_OPTION,
    y_max: Optional[float] = typer.Option(None, "--ymax", help="Cusp truncation height."),
    cap_rows: Optional[int] = typer.Option(None, "--cap-rows", help="Rows of the cusp cap."),
    front_gluing: Optional[FrontGluing] = typer.Option(
        None, "--front-gluing", help="How front cells are identified."
    ),
    csv: Optional[Path] = typer.Option(None, "--csv", help="Write nodal points on the faces."),
    threads: Optional[int] = THREADS_OPTION,
    zero_tol: Optional[float] = ZERO_TOL_OPTION,
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Count the nodal domains of the weight-24 lift of Delta squared on the modular solid.
    """
    config = _load(
        Command.MODULAR_COUNT,
        resolution=resolution,
        y_max=y_max,
        cap_rows=cap_rows,
        front_gluing=front_gluing,
        csv=csv,
        threads=threads,
        zero_tol=zero_tol,
        out=out,
        omit_timing=omit_timing,
    )
    config = config.with_defaults(resolution=(96, 96, 192))
    started = time.perf_counter()

    with _diagnostics():
        series = phi_series()
        field = capped_field(series, config.y_max)
        solid_params = {
            "y_max": config.y_max,
            "cap_rows": config.cap_rows,
            "front_gluing": config.front_gluing,
        }
        counter = NodalCounter(threads=config.threads, zero_tol=config.zero_tol)

        with alive_bar(3, title="Modular solid", file=sys.stderr) as bar:
            bar.text("-> counting at two resolutions")
            count, nodal_set = counter.count_with_nodal_set(
                field, ManifoldTag.MODULAR_SOLID, config.resolution, **solid_params
            )
            bar()

            solid = FundamentalSolid(resolution=config.resolution, **solid_params)
            bar.text("-> comparing faces")
            faces = {face: solid.face_sign_agreement(series, face) for face in ("side", "front")}
            bar()

            if config.csv is not None:
                bar.text("-> nodal points")
                grid = solid.to_grid()
                labeling = counter.label_grid(field, grid)
                rows = solid.nodal_face_rows(grid, labeling.signs, labeling.labels)
                ReportWriter.write_csv(config.csv, rows, CSV_FIELDS)
            bar()

        counted = (count.n_pos, count.n_neg) == (2, 2) and count.converged
        _status(counted, f"{count.n_pos} positive and {count.n_neg} negative domains")
        phase = faces["front"].phase_offset
        for face, agreement in faces.items():
            _status(agreement.agrees, f"{face} face: {agreement.agreeing}/{agreement.compared} cells agree")
        _status(phase.constant, f"Front phase offset {phase.offset:.2e} (spread {phase.spread:.2e})")
        _status(
            nodal_set.converged,
            f"Nodal set: {nodal_set.components} components (coarse {nodal_set.coarse_components})",
        )
        if config.csv is not None:
            _status(True, f"Nodal points written to {config.csv}")

        results = {
            "count": count.model_dump(mode="json"),
            "faces": {
                face: {
                    "compared": a.compared,
                    "agreeing": a.agreeing,
                    "agrees": a.agrees,
                }
                for face, a in faces.items()
            },
            "front_phase_offset": phase.model_dump(mode="json"),
            "nodal_set": nodal_set.model_dump(mode="json"),
            "total": count.total,
            "n_pos": count.n_pos,
            "n_neg": count.n_neg,
        }
        passed = counted and all(a.agrees for a in faces.values()) and phase.constant
        _finish(config, results, passed, started)


@app.command("sphere-check")
def sphere_check(
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Check the Hopf-coordinate eigenfunctions of the three-sphere.
    """
    config = _load(Command.SPHERE_CHECK, out=out, omit_timing=omit_timing)
    started = time.perf_counter()

    with _diagnostics():
        rows = []
        for degree, m1, m2 in SPHERE_CASES:
            t = HopfEigenfunction(N=degree, m1=m1, m2=m2)
            residual = t.laplace_residual(h=1e-3)
            zeros = t.alpha_factor_zeros()
            ok = residual < SPHERE_TOL and len(zeros) == t.jacobi_degree
            _status(ok, f"N={degree}, m=({m1}, {m2}): residual {residual:.2e}, {len(zeros)} alpha zeros")
            rows.append(
                {
                    "N": degree,
                    "m1": m1,
                    "m2": m2,
                    "eigenvalue": -t.eigenvalue,
                    "residual": residual,
                    "alpha_zeros": zeros,
                    "passed": ok,
                }
            )
        _finish(config, {"cases": rows}, all(r["passed"] for r in rows), started)


@app.command("graph-count")
def graph_count(
    m: Optional[int] = typer.Option(None, "--m", help="Largest weight of the sweep."),
    samples: Optional[int] = SAMPLES_OPTION,
    seed: Optional[int] = SEED_OPTION,
    resolution: Optional[str] = typer.Option(None, "--res", help="Disc resolution AxB."),
    threads: Optional[int] = THREADS_OPTION,
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Compare the partition-graph count with the grid count on random disc fields.
    """
    config = _load(
        Command.GRAPH_COUNT,
        m=m,
        samples=samples,
        seed=seed,
        resolution=resolution,
        threads=threads,
        out=out,
        omit_timing=omit_timing,
    )
    config = config.with_defaults(m=3, samples=50, resolution=(64, 64))
    started = time.perf_counter()

    with _diagnostics():
        factory = RandomFieldFactory(seed=config.seed)
        counter = NodalCounter(threads=config.threads)
        n_x, n_y = config.resolution[:2]
        disc = ChartGrid.build(ManifoldTag.DISC2, (n_x, n_y))
        weights = range(1, config.m + 1)

        rows = []
        with alive_bar(config.samples, title="Random disc fields", file=sys.stderr) as bar:
            for sample in range(config.samples):
                bar.text("-> trigonometric and planted fields")
                trig = factory.draw_trig()
                planted = factory.draw()
                families = (("trig", trig, None), ("planted", planted, planted.expected_count))
                for family, base, expected in families:
                    pp = PartitionPair.from_field(base, disc)
                    generic = pp.check_generic_pair()
                    detector = pp.has_split_quadruple()
                    for weight in weights:
                        field = EquivariantField(weight=weight, base=base, chart_id="disc2")
                        count = counter.count_nodal_domains(
                            field, ManifoldTag.DISC2_X_CIRCLE, (n_x, n_y, 8 * weight)
                        )
                        graph = LayeredGraph.build(pp, weight).graph_components() if generic else None
                        rows.append(
                            {
                                "sample": sample,
                                "family": family,
                                "m": weight,
                                "graph": graph,
                                "grid": count.total,
                                "expected": expected(weight) if expected else None,
                                "converged": count.converged,
                                "generic": generic,
                                "detector": detector,
                            }
                        )
                bar()

        gated = [r for r in rows if r["converged"] and r["generic"]]
        mismatches = [r for r in gated if r["graph"] != r["grid"]]
        oracle_misses = [r for r in gated if r["expected"] is not None and r["expected"] != r["grid"]]
        bound_violations = [r for r in gated if r["graph"] > 2 * r["m"]]
        detector_violations = [r for r in gated if r["detector"] and r["graph"] != 2]

        _status(not mismatches, f"{len(gated) - len(mismatches)}/{len(gated)} gated comparisons agree")
        _status(not oracle_misses, f"{len(oracle_misses)} disagreements with the planted-zero count")
        _status(not bound_violations, f"{len(bound_violations)} counts above 2m")
        _status(not detector_violations, f"{len(detector_violations)} detector hits without two domains")

        results = {
            "comparisons": rows,
            "gated": len(gated),
            "skipped": len(rows) - len(gated),
            "mismatches": len(mismatches),
            "oracle_misses": len(oracle_misses),
            "bound_violations": len(bound_violations),
            "detector_violations": len(detector_violations),
        }
        passed = not (mismatches or oracle_misses or bound_violations or detector_violations)
        _finish(config, results, passed, started)


@app.command("index")
def index(
    samples: Optional[int] = SAMPLES_OPTION,
    seed: Optional[int] = SEED_OPTION,
    resolution: Optional[str] = typer.Option(None, "--res", help="Base torus resolution AxB."),
    out: Optional[Path] = OUT_OPTION,
    omit_timing: bool = TIMING_OPTION,
):
    """
    Winding indices of base zeros of random torus fields, and fiber zero counts.
    """
    config = _load(
        Command.INDEX,
        samples=samples,
        seed=seed,
        resolution=resolution,
        out=out,
        omit_timing=omit_timing,
    )
    config = config.with_defaults(samples=20, resolution=(64, 64))
    started = time.perf_counter()

    with _diagnostics():
        rng = np.random.default_rng(config.seed)
        case1 = [e for e in TorusBasis.enumerate_basis(2) if e.case is CaseTag.CASE1]
        grid = ChartGrid.build(ManifoldTag.TORUS2, tuple(config.resolution[:2]))
        radius = 1.0 / min(grid.dims)

        fields = []
        for _ in range(config.samples):
            element = case1[int(rng.integers(len(case1)))]
            shift = rng.uniform(0.0, 1.0, size=2)
            base = element.as_equivariant_field().base

            def translated(x: np.ndarray, y: np.ndarray, base=base, shift=shift) -> np.ndarray:
                return base(np.asarray(x) - shift[0], np.asarray(y) - shift[1])

            fields.append((element, translated))

        rows = []
        with alive_bar(len(fields), title="Base zeros", file=sys.stderr) as bar:
            for sample, (element, f) in enumerate(fields):
                m = element.frequencies[0]
                indices = [
                    Winding.winding_index(f, cell.center, radius, m=m)
                    for cell in Winding.base_zero_cells(f, grid)
                ]
                rows.append(
                    {
                        "sample": sample,
                        "m": m,
                        "zeros": len(indices),
                        "degrees": [w.degree for w in indices],
                        "indices": [str(w.index) for w in indices],
                        "degree_sum": sum(w.degree for w in indices),
                    }
                )
                bar()

        fiber_rows = []
        for weight in FIBER_WEIGHTS:
            _, f = fields[0]
            field = EquivariantField(weight=weight, base=f, chart_id=TORUS2)
            counter = NodalCounter()
            failures = 0
            for a, b in rng.uniform(0.0, 1.0, size=(100, 2)):
                point = BasePoint(chart_id=TORUS2, coords=(float(a), float(b)))
                if counter.fiber_zero_count(field, point, 32 * weight) != 2 * weight:
                    failures += 1
            fiber_rows.append({"m": weight, "points": 100, "failures": failures})

        simple = all(abs(d) == 1 for r in rows for d in r["degrees"])
        balanced = all(r["degree_sum"] == 0 for r in rows)
        fibers_ok = all(r["failures"] == 0 for r in fiber_rows)
        _status(simple, "Every base zero has degree +-1.")
        _status(balanced, "Degrees sum to zero on every field.")
        _status(fibers_ok, f"Fiber zero counts equal 2m for m in {list(FIBER_WEIGHTS)}.")

        results = {"fields": rows, "fibers": fiber_rows}
        _finish(config, results, simple and balanced and fibers_ok, started)


if __name__ == "__main__":
    app()
