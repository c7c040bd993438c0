"""Pass/fail lines of the acceptance criteria, printed in the terminal summary."""
LINES: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> str:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    LINES[n] = line
    print(line)
    return line
