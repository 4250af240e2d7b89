"""Prometheus metrics for the colouring engine, harness and service."""
from prometheus_client import Counter, Histogram, generate_latest

# HTTP metrics
http_requests_total = Counter(
    'multicolor_http_requests_total',
    'Total HTTP requests',
    ['method', 'endpoint', 'status'],
)

http_request_duration_seconds = Histogram(
    'multicolor_http_request_duration_seconds',
    'HTTP request latency',
    ['method', 'endpoint'],
    buckets=(0.01, 0.025, 0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0),
)

# Engine metrics
colorings_total = Counter(
    'multicolor_colorings_total',
    'Completed colorings by dispatch strategy',
    ['strategy', 'first_class'],
)

coloring_duration_seconds = Histogram(
    'multicolor_coloring_duration_seconds',
    'Time spent in color_optimal',
    ['strategy'],
    buckets=(0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0),
)

kempe_switches_total = Counter(
    'multicolor_kempe_switches_total',
    'Kempe switches performed during augmentation',
)

budget_exhaustions_total = Counter(
    'multicolor_budget_exhaustions_total',
    'Augmentations that ran out of switch budget',
)

# Harness metrics
trials_total = Counter(
    'multicolor_trials_total',
    'Monte Carlo trials by outcome',
    ['status'],
)


def metrics_view() -> bytes:
    """Expose Prometheus metrics."""
    return generate_latest()
