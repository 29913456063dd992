from models.verbosity import emit

# Metrics storage
_metrics = {
    'cost_evaluations': 0,
    'cache_hits': 0,
    'cache_misses': 0,
    'neighbors_scanned': 0,
    'search_steps': 0,
    'searches': 0,
    'local_optima': 0,
    'violations': 0,
}


def log_cost_evaluation(source='computed'):
    """Count one cost lookup. source is 'computed' or 'cache'"""
    if source == 'cache':
        _metrics['cache_hits'] += 1
    else:
        _metrics['cache_misses'] += 1
        _metrics['cost_evaluations'] += 1


def log_neighbors_scanned(count):
    """Count neighbors examined by a scan"""
    _metrics['neighbors_scanned'] += count


def log_search_step(problem_name, step, cost, move):
    """Log one accepted local-search move"""
    _metrics['search_steps'] += 1
    emit(f"[SEARCH] ➡️ {problem_name} step {step} | cost {cost} | {move}")


def log_search_finished(problem_name, steps, cost, terminated):
    """Log the end of a local-search run"""
    _metrics['searches'] += 1
    if terminated == 'local_optimum':
        _metrics['local_optima'] += 1
    icon = '✅' if terminated == 'local_optimum' else '⏱️'
    emit(f"[SEARCH] {icon} {problem_name} {terminated.upper()} after {steps} steps | cost {cost} | "
         f"Total: {_metrics['search_steps']} steps / {_metrics['searches']} searches")


def log_enumeration(problem_name, scanned, optima):
    """Log a finished exhaustive scan"""
    emit(f"[ORACLE] 🔎 {problem_name}: {scanned} solutions scanned, {optima} local optima | "
         f"Cache: {_metrics['cache_hits']} hits / {_metrics['cache_misses']} misses")


def log_violation(claim, witness):
    """Log a claim violation"""
    _metrics['violations'] += 1
    emit(f"[ORACLE] ⛔ VIOLATION {claim} | witness {witness}")


def log_campaign(runs, violations, errors, elapsed):
    """Log a finished campaign"""
    icon = '✅' if not violations and not errors else '⛔'
    emit(f"[ORACLE] {icon} Campaign finished: {runs} runs in {elapsed:.1f}s | "
         f"{violations} violations, {errors} errors")


def log_embedding(points, dimension, error):
    """Log a finished embedding"""
    emit(f"[EMBED] 📐 {points} points -> dimension {dimension} | max error {error:.3e}")


def log_warning(message):
    """Log a warning line"""
    emit(f"[LAB] ⚠️ {message}")


def reset_metrics():
    """Reset all metrics to zero"""
    global _metrics
    _metrics = {
        'cost_evaluations': 0,
        'cache_hits': 0,
        'cache_misses': 0,
        'neighbors_scanned': 0,
        'search_steps': 0,
        'searches': 0,
        'local_optima': 0,
        'violations': 0,
    }


def get_metrics():
    """Get a snapshot of the current counters"""
    total_lookups = _metrics['cache_hits'] + _metrics['cache_misses']
    hit_rate = (_metrics['cache_hits'] / total_lookups * 100) if total_lookups > 0 else 0

    return {
        'cost_evaluations': _metrics['cost_evaluations'],
        'cache_hits': _metrics['cache_hits'],
        'cache_misses': _metrics['cache_misses'],
        'cache_hit_rate': f"{hit_rate:.1f}%",
        'neighbors_scanned': _metrics['neighbors_scanned'],
        'search_steps': _metrics['search_steps'],
        'searches': _metrics['searches'],
        'local_optima': _metrics['local_optima'],
        'violations': _metrics['violations'],
    }
