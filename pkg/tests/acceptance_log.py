"""Collects one line per acceptance criterion for the terminal summary."""

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line, flush=True)
