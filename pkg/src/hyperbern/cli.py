"""Command-line front end: exact tables as CSV/JSON, plus the verification suite.

Four subcommands:

* ``numbers`` -- hypergeometric Bernoulli numbers at one level.
* ``polys``   -- polynomial coefficient tables (any order).
* ``apoly``   -- the bivariate coefficient polynomials of the
  sums-of-products expansion, optionally specialized at a rational s.
* ``verify``  -- run identity-certification suites; exits 1 on any failure.

All rationals are emitted as reduced "p/q" strings, never floats.  Output is
byte-deterministic for a fixed command line once ``--no-meta`` suppresses the
timestamped metadata header.  Exit codes: 0 success, 1 verification failure,
2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import click

from . import __version__
from .algebra import bipoly_subst_s, format_rational, parse_rational
from .core import a_poly, hb_higher_polys_series, hb_numbers
from .identities import ALL_SUITES, FAIL, SuiteConfig, run_suite

SCHEMA_VERSION = 1

_VERIFY_PARAM_COLUMNS = ("N", "r", "n", "n_max", "order")
_VERIFY_COLUMNS = ("identity",) + _VERIFY_PARAM_COLUMNS + (
    "status",
    "cells_checked",
    "details",
    "counterexample",
)


@dataclass(frozen=True)
class OutputRecord:
    """One command's output: a payload of serialized rows plus its parameters.

    The payload is already in wire form (rationals as "p/q" strings), so the
    same record renders to CSV and JSON with identical mathematical content,
    and parsing either format recovers the payload exactly.
    """

    kind: str  # numbers | polys | apoly | verify
    params: dict
    payload: list


def _meta() -> dict:
    return {
        "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "tool": "hyperbern",
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# JSON rendering / parsing
# ---------------------------------------------------------------------------


def render_json(record: OutputRecord, with_meta: bool = True) -> str:
    doc: dict = {"schema": SCHEMA_VERSION, "kind": record.kind, "params": record.params}
    if with_meta:
        doc["meta"] = _meta()
    doc["data"] = record.payload
    return json.dumps(doc, indent=2) + "\n"


def parse_json(text: str) -> OutputRecord:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema: {doc.get('schema')!r}")
    return OutputRecord(kind=doc["kind"], params=doc["params"], payload=doc["data"])


# ---------------------------------------------------------------------------
# CSV rendering / parsing
# ---------------------------------------------------------------------------


def render_csv(record: OutputRecord, with_meta: bool = True) -> str:
    buf = io.StringIO()
    if with_meta:
        for key, value in _meta().items():
            buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    kind = record.kind
    if kind == "numbers":
        writer.writerow(["n", "value"])
        for row in record.payload:
            writer.writerow([row["n"], row["value"]])
    elif kind == "polys":
        width = max((len(r["coeffs"]) for r in record.payload), default=1)
        writer.writerow(["n"] + [f"c{k}" for k in range(width)])
        for row in record.payload:
            writer.writerow([row["n"]] + list(row["coeffs"]))
    elif kind == "apoly":
        if record.params.get("subst_s") is not None:
            width = max((len(r["coeffs"]) for r in record.payload), default=1)
            writer.writerow(["i"] + [f"c{k}" for k in range(width)])
            for row in record.payload:
                writer.writerow([row["i"]] + list(row["coeffs"]))
        else:
            writer.writerow(["i", "x_pow", "s_pow", "value"])
            for row in record.payload:
                for x_pow, s_row in enumerate(row["coeffs_xs"]):
                    for s_pow, value in enumerate(s_row):
                        writer.writerow([row["i"], x_pow, s_pow, value])
    elif kind == "verify":
        writer.writerow(_VERIFY_COLUMNS)
        for row in record.payload:
            out = [row["identity"]]
            for key in _VERIFY_PARAM_COLUMNS:
                v = row["params"].get(key)
                out.append("" if v is None else v)
            out.append(row["status"])
            out.append(row["cells_checked"])
            for key in ("details", "counterexample"):
                v = row.get(key)
                out.append("" if v is None else json.dumps(v, separators=(",", ":")))
            writer.writerow(out)
    else:
        raise ValueError(f"unknown record kind {kind!r}")
    return buf.getvalue()


def parse_csv(text: str, kind: str, subst_s: bool = False) -> list:
    """Recover the payload rows from a CSV rendering of the given kind."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    rows = list(csv.reader(lines))
    header, rows = rows[0], rows[1:]
    if kind == "numbers":
        return [{"n": int(r[0]), "value": r[1]} for r in rows]
    if kind == "polys":
        return [{"n": int(r[0]), "coeffs": r[1:]} for r in rows]
    if kind == "apoly" and subst_s:
        return [{"i": int(r[0]), "coeffs": r[1:]} for r in rows]
    if kind == "apoly":
        matrices: dict[int, dict[tuple[int, int], str]] = {}
        for r in rows:
            matrices.setdefault(int(r[0]), {})[(int(r[1]), int(r[2]))] = r[3]
        payload = []
        for i in sorted(matrices):
            cells = matrices[i]
            nx = 1 + max(x for x, _ in cells)
            ns = 1 + max(s for _, s in cells)
            payload.append(
                {
                    "i": i,
                    "coeffs_xs": [
                        [cells.get((x, s), "0") for s in range(ns)] for x in range(nx)
                    ],
                }
            )
        return payload
    if kind == "verify":
        payload = []
        for r in rows:
            cells = dict(zip(header, r))
            params = {
                key: int(cells[key]) for key in _VERIFY_PARAM_COLUMNS if cells.get(key)
            }
            payload.append(
                {
                    "identity": cells["identity"],
                    "params": params,
                    "status": cells["status"],
                    "cells_checked": int(cells["cells_checked"]),
                    "counterexample": json.loads(cells["counterexample"])
                    if cells.get("counterexample")
                    else None,
                    "details": json.loads(cells["details"]) if cells.get("details") else None,
                }
            )
        return payload
    raise ValueError(f"unknown record kind {kind!r}")


# ---------------------------------------------------------------------------
# payload builders
# ---------------------------------------------------------------------------


def _serialize_unipoly(p) -> list[str]:
    # the zero polynomial is written as a single explicit "0"
    return [format_rational(c) for c in p.coeffs] or ["0"]


def _serialize_bipoly(a) -> list[list[str]]:
    if a.is_zero:
        return [["0"]]
    return [[format_rational(c) for c in row] for row in a.coeffs]


def _report_payload(reports) -> list:
    return [
        {
            "identity": rep.identity_name,
            "params": rep.params,
            "status": rep.status,
            "cells_checked": rep.cells_checked,
            "counterexample": rep.counterexample,
            "details": rep.details,
        }
        for rep in reports
    ]


# ---------------------------------------------------------------------------
# click wiring
# ---------------------------------------------------------------------------


def _positive(_ctx, param, value):
    if value is not None and value < 1:
        raise click.BadParameter(f"{param.opts[0]} must be >= 1")
    return value


def _nonnegative(_ctx, param, value):
    if value is not None and value < 0:
        raise click.BadParameter(f"{param.opts[0]} must be >= 0")
    return value


def _output_options(default_format: str):
    def wrap(f):
        f = click.option(
            "--format",
            "fmt",
            type=click.Choice(["csv", "json"]),
            default=default_format,
            show_default=True,
            help="Output format.",
        )(f)
        f = click.option(
            "--output",
            type=click.Path(dir_okay=False, writable=True),
            default=None,
            help="Write to a file instead of stdout.",
        )(f)
        f = click.option(
            "--no-meta",
            is_flag=True,
            help="Suppress the timestamped metadata header (byte-deterministic output).",
        )(f)
        return f

    return wrap


def _emit(record: OutputRecord, fmt: str, output: str | None, no_meta: bool) -> None:
    if fmt == "json":
        text = render_json(record, with_meta=not no_meta)
    else:
        text = render_csv(record, with_meta=not no_meta)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(version=__version__, prog_name="hyperbern")
def cli():
    """Exact hypergeometric Bernoulli tables and identity certification."""


@cli.command()
@click.option("--N", "level", type=int, required=True, callback=_positive, help="Level N >= 1.")
@click.option("--max-n", type=int, required=True, callback=_nonnegative, help="Largest index n.")
@_output_options("csv")
def numbers(level, max_n, fmt, output, no_meta):
    """Numbers B[N,n] for n = 0..max-n, as exact reduced rationals."""
    table = hb_numbers(level, max_n)
    payload = [{"n": n, "value": format_rational(v)} for n, v in enumerate(table.values)]
    record = OutputRecord("numbers", {"N": level, "max_n": max_n}, payload)
    _emit(record, fmt, output, no_meta)


@cli.command()
@click.option("--N", "level", type=int, required=True, callback=_positive, help="Level N >= 1.")
@click.option("--r", "order_r", type=int, default=1, show_default=True, callback=_positive, help="Order r >= 1.")
@click.option("--max-n", type=int, required=True, callback=_nonnegative, help="Largest index n.")
@_output_options("csv")
def polys(level, order_r, max_n, fmt, output, no_meta):
    """Polynomial tables, one row per index with ascending coefficients."""
    table = hb_higher_polys_series(level, order_r, max_n)
    payload = [
        {"n": n, "coeffs": _serialize_unipoly(p)} for n, p in enumerate(table.polys)
    ]
    record = OutputRecord(
        "polys", {"N": level, "r": order_r, "max_n": max_n}, payload
    )
    _emit(record, fmt, output, no_meta)


@cli.command()
@click.option("--N", "level", type=int, required=True, callback=_positive, help="Level N >= 1.")
@click.option("--r", "order_r", type=int, required=True, callback=_positive, help="Order r >= 1.")
@click.option(
    "--subst-s",
    default=None,
    help='Substitute a rational value (e.g. "3" or "-5/2") for s before output.',
)
@_output_options("csv")
def apoly(level, order_r, subst_s, fmt, output, no_meta):
    """Coefficient polynomials of the sums-of-products expansion, i = 0..r-1."""
    if subst_s is not None:
        try:
            s_val = parse_rational(subst_s)
        except ValueError as exc:
            raise click.BadParameter(str(exc), param_hint="--subst-s")
    table = a_poly(level, order_r)
    if subst_s is None:
        payload = [
            {"i": i, "coeffs_xs": _serialize_bipoly(e)} for i, e in enumerate(table.entries)
        ]
    else:
        payload = [
            {"i": i, "coeffs": _serialize_unipoly(bipoly_subst_s(e, s_val))}
            for i, e in enumerate(table.entries)
        ]
    record = OutputRecord(
        "apoly", {"N": level, "r": order_r, "subst_s": subst_s}, payload
    )
    _emit(record, fmt, output, no_meta)


def _parse_fault(_ctx, _param, value):
    if value is None:
        return None
    try:
        level_str, k_str = value.split(",")
        level, k = int(level_str), int(k_str)
    except ValueError:
        raise click.BadParameter('expected "N,k" with integers N >= 1, k >= 2')
    if level < 1 or k < 2:
        raise click.BadParameter('expected "N,k" with integers N >= 1, k >= 2')
    return (level, k)


@cli.command()
@click.option(
    "--suite",
    "suites",
    multiple=True,
    type=click.Choice(ALL_SUITES),
    help="Suite(s) to run; repeatable. Default: all suites.",
)
@click.option("--N-max", "N_max", type=int, default=None, callback=_nonnegative)
@click.option("--r-max", "r_max", type=int, default=None, callback=_nonnegative)
@click.option("--n-max", "n_max", type=int, default=None, callback=_nonnegative)
@click.option(
    "--mode",
    type=click.Choice(["auto", "grid", "sample"]),
    default="auto",
    show_default=True,
    help="Point strategy for the polynomial sums-of-products family.",
)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--sample-count", type=int, default=64, show_default=True, callback=_positive)
@click.option(
    "--inject-fault",
    callback=_parse_fault,
    default=None,
    help='Self-test aid: "N,k" perturbs the stored number B[N,k] by +1 and must trip the suite.',
)
@_output_options("json")
def verify(suites, N_max, r_max, n_max, mode, seed, sample_count, inject_fault, fmt, output, no_meta):
    """Certify identities over parameter ranges; exit 1 on any failed cell."""
    config = SuiteConfig(
        suites=tuple(suites) if suites else ALL_SUITES,
        N_max=N_max,
        r_max=r_max,
        n_max=n_max,
        mode=mode,
        seed=seed,
        sample_count=sample_count,
        fault=inject_fault,
    )
    reports = run_suite(config)
    params = {
        "suites": list(config.suites),
        "N_max": N_max,
        "r_max": r_max,
        "n_max": n_max,
        "mode": mode,
        "seed": seed,
        "sample_count": sample_count,
        "inject_fault": list(inject_fault) if inject_fault else None,
    }
    record = OutputRecord("verify", params, _report_payload(reports))
    _emit(record, fmt, output, no_meta)
    if any(rep.status == FAIL for rep in reports):
        raise SystemExit(1)


def main():
    cli()


if __name__ == "__main__":
    main()
