import os



def announce(stage: str, message: str):
    """Prints a status line for `stage` unless `LAB_QUIET` is set."""
    if os.getenv("LAB_QUIET", "0") not in ("", "0"):
        return

    print(f"[{stage}] {message}")


def progress_every() -> int:
    """Sweep interval for solver progress lines; 0 disables them."""
    try:
        return max(0, int(os.getenv("LAB_PROGRESS_EVERY", "0")))
    except ValueError:
        return 0
