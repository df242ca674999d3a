"""Console message templates for the command-line interface."""

MESSAGES = {
    "separator": "-" * 60,
    # Errors
    "error_validation": "Invalid input: {detail}",
    "error_infeasible": "Infeasible placement problem: {detail}",
    "error_usage": "Invalid command line (see --help)",
    # Results
    "row": "{scheme:<12} L={L:<2} T={T:<3} K={K:<3} q=({qx:.1f}, {qy:.1f})  "
    "throughput={mean:.6f}  CI95=[{lo:.6f}, {hi:.6f}]{flag}",
    "row_infeasible_flag": "  (fairness violated)",
    "written": "Wrote {path}",
    # Placement
    "placement": "{method} placement: q*=({qx:.2f}, {qy:.2f}) fitness={fitness:.6f} "
    "after {iterations} iterations, {evaluations} evaluations",
    "fairness_worst": "Worst user {user}: PER={per:.3e}, P(decode first {l_min})={prob:.4f} "
    "(threshold {p_th})",
    # Lifecycle
    "done": "{command} finished in {seconds:.1f}s",
}


def get_message(key: str, **kwargs) -> str:
    """Formatted template, or a placeholder naming a missing key."""
    try:
        template = MESSAGES[key]
    except KeyError:
        return f"[Missing message: {key}]"
    try:
        return template.format(**kwargs)
    except (KeyError, ValueError):
        return template
