"""Collects one verdict per acceptance criterion for the terminal summary."""

RESULTS: dict = {}


def record(key: int, ok: bool, title: str, *details: str) -> bool:
    prev = RESULTS.get(key)
    if prev is not None:
        ok = ok and prev[0]
        details = (*prev[2], *details)
    RESULTS[key] = (ok, title, list(details))
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {title} {'; '.join(details)}")
    return ok
