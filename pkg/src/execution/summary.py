"""
src/execution/summary.py

Human-readable banner summary of a RunReport, printed by src/main.py after
the files are written.  Library modules log; only this module and the
entry point print.

Usage:
    from src.execution.summary import print_summary
    print_summary(report)
"""


def _fmt(value) -> str:
    return "   n/a   " if value is None else f"{value:9.2e}"


def _header(title: str) -> None:
    print(f"\n{'='*66}")
    print(f"  {title}")
    print(f"{'='*66}")


def _footer(files: list[str], exit_code: int) -> None:
    print(f"\n  {'─'*62}")
    if files:
        print(f"  Files      : {', '.join(files)}")
    print(f"  Exit code  : {exit_code}")
    print(f"{'='*66}\n")


def _simulate(payload: dict) -> None:
    model = payload["model"]
    _header(f"simulate  |  {model['model']}  |  {model['class']}  |  {payload['n_steps']} steps")
    print(f"  max |c1|              : {payload['max_c1_abs']:.2e}")
    print(f"  max |c2|              : {payload['max_c2_abs']:.2e}")
    print(f"  max reality residual  : {payload['max_reality_residual']:.2e}")
    print(f"\n  {'observable':<14} {'initial':>26}  {'abs drift':>9}  {'rel drift':>9}")
    for row in payload["observables"]:
        re, im = row["initial"]
        print(f"  {row['observable']:<14} {re:>12.5g} {im:+12.5g}i  "
              f"{_fmt(row['max_abs_drift'])}  {_fmt(row['max_rel_drift'])}")
    iso = payload.get("isospectral")
    if iso:
        worst = max(max(s["trace_sq_rel_drift"], s["det_rel_drift"]) for s in iso["samples"])
        print(f"\n  isospectral drift (tr L², det L) over {len(iso['samples'])} points: {worst:.2e}")


def _dims(payload: dict) -> None:
    _header(f"dims  |  {len(payload['reports'])} group type(s)")
    for entry in payload["reports"]:
        dims = entry["dims"]
        print(f"  {entry['type']:<4} orders={dims['orders']}  dim G={dims['dim_G']}  "
              f"dim X_V={dims['dim_XV']}  center={entry['center']['center']}")
        counts = entry.get("counts")
        if counts:
            print(f"       g={counts['g']} n={counts['n']}  dim M_V={counts['dim_M_V']}  "
                  f"N_G={counts['N_G']}  n_j={counts['n_j']}")


def _check(payload: dict) -> None:
    _header(f"check  |  seed {payload['seed']}  |  {payload['n_checks']} invariant(s)")
    suite = None
    for row in payload["checks"]:
        if row["suite"] != suite:
            suite = row["suite"]
            print(f"\n  [{suite}]")
        mark = "✅" if row["passed"] else "❌"
        op = row.get("comparison", "<=")
        print(f"  {mark} {row['name']:<52} {_fmt(row['residual'])} {op} {row['bound']:.0e}")
        if row.get("error"):
            print(f"       {row['error']}")
    verdict = "PASS" if payload["passed"] else f"FAIL ({payload['n_failed']} failed)"
    print(f"\n  Result     : {verdict}")


def _spectrum(payload: dict) -> None:
    _header(f"spectrum  |  l = {payload['l']:g}  |  dimension {payload['dimension']}")
    print(f"  J          : {payload['J']}")
    print(f"  Hermitian  : {payload['hermitian']}")
    for k, value in enumerate(payload["eigenvalues"]):
        shown = f"{value:.12g}" if not isinstance(value, list) else f"{value[0]:.12g} {value[1]:+.12g}i"
        print(f"    λ[{k:>2}] = {shown}")


_PRINTERS = {
    "simulate": _simulate,
    "dims": _dims,
    "check": _check,
    "spectrum": _spectrum,
}


def print_summary(report) -> None:
    _PRINTERS[report.action](report.payload)
    _footer(report.files, report.exit_code)
