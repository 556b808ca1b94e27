"""Shared record of acceptance results, printed by the terminal summary hook."""

RESULTS = {}


def report(n: int, title: str, ok: bool, detail: str = "") -> bool:
    RESULTS[n] = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}" + \
        (f"  [{detail}]" if detail else "")
    return ok
