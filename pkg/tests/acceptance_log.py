"""Shared record of acceptance outcomes, printed at the end of a pytest run."""

ACCEPTANCE: dict[int, tuple[str, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = ("PASS" if ok else "FAIL", detail)
    print(f"criterion {criterion}: {ACCEPTANCE[criterion][0]}: {detail}")
