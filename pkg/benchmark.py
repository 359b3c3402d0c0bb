"""
Benchmark and Profiling Module for the aesthetica curve toolkit.

Provides:
- Performance benchmarking with statistical analysis
- Function-level profiling with decorators
- Execution time measurement

Usage:
    # Run benchmarks
    python benchmark.py

    # Use profiling decorator
    @profile_function
    def my_function():
        pass
"""
import functools
import statistics
import time
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

from rich.console import Console
from rich.table import Table

console = Console()


# =============================================================================
# PROFILING DECORATOR
# =============================================================================

@dataclass
class ProfileResult:
    """Result of profiling a function call."""
    function_name: str
    execution_time: float
    timestamp: datetime = field(default_factory=datetime.now)
    success: bool = True
    error: Optional[str] = None


# Global profiling data store
_profile_data: Dict[str, List[ProfileResult]] = {}


def profile_function(func: Callable) -> Callable:
    """
    Decorator to profile function execution time.

    Results are stored in _profile_data and can be retrieved via get_profile_summary()
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        start_time = time.perf_counter()
        error_msg = None
        success = True

        try:
            return func(*args, **kwargs)
        except Exception as e:
            success = False
            error_msg = str(e)
            raise
        finally:
            func_name = func.__qualname__
            _profile_data.setdefault(func_name, []).append(ProfileResult(
                function_name=func_name,
                execution_time=time.perf_counter() - start_time,
                success=success,
                error=error_msg,
            ))

    return wrapper


def get_profile_summary() -> Dict[str, Dict[str, Any]]:
    """
    Get summary of all profiled functions.

    Returns:
        Dictionary with function names as keys and stats as values
    """
    summary = {}

    for func_name, results in _profile_data.items():
        times = [r.execution_time for r in results]
        successes = [r for r in results if r.success]

        summary[func_name] = {
            "call_count": len(results),
            "success_count": len(successes),
            "failure_count": len(results) - len(successes),
            "total_time": sum(times),
            "avg_time": statistics.mean(times) if times else 0,
            "min_time": min(times) if times else 0,
            "max_time": max(times) if times else 0,
            "std_dev": statistics.stdev(times) if len(times) > 1 else 0,
        }

    return summary


def clear_profile_data() -> None:
    """Clear all profiling data."""
    _profile_data.clear()


def print_profile_report() -> None:
    """Print a profiling table sorted by total time."""
    summary = get_profile_summary()

    if not summary:
        console.print("No profiling data collected.")
        return

    table = Table(title="Profiling Report")
    for column in ("Function", "Calls", "Failed", "Total (s)", "Avg (s)", "Min (s)", "Max (s)"):
        table.add_column(column, justify="left" if column == "Function" else "right")

    for func_name, stats in sorted(summary.items(), key=lambda x: x[1]["total_time"], reverse=True):
        table.add_row(
            func_name,
            str(stats["call_count"]),
            str(stats["failure_count"]),
            f"{stats['total_time']:.3f}",
            f"{stats['avg_time']:.3f}",
            f"{stats['min_time']:.3f}",
            f"{stats['max_time']:.3f}",
        )
    console.print(table)


# =============================================================================
# BENCHMARK RUNNER
# =============================================================================

@dataclass
class BenchmarkResult:
    """Result of a benchmark run."""
    name: str
    iterations: int
    times: List[float]
    timestamp: datetime = field(default_factory=datetime.now)

    @property
    def mean(self) -> float:
        return statistics.mean(self.times) if self.times else 0

    @property
    def median(self) -> float:
        return statistics.median(self.times) if self.times else 0

    @property
    def std_dev(self) -> float:
        return statistics.stdev(self.times) if len(self.times) > 1 else 0

    @property
    def min_time(self) -> float:
        return min(self.times) if self.times else 0

    @property
    def max_time(self) -> float:
        return max(self.times) if self.times else 0

    @property
    def status(self) -> str:
        if not self.times:
            return "❌ FAILED"
        if self.mean < 1:
            return "✅ EXCELLENT"
        if self.mean < 5:
            return "✅ GOOD"
        if self.mean < 20:
            return "⚠️ ACCEPTABLE"
        return "❌ NEEDS IMPROVEMENT"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "iterations": self.iterations,
            "mean": self.mean,
            "median": self.median,
            "std_dev": self.std_dev,
            "min": self.min_time,
            "max": self.max_time,
            "timestamp": self.timestamp.isoformat(),
        }


class Benchmark:
    """
    Benchmark runner for performance testing.

    Usage:
        bench = Benchmark()
        bench.add("ESA check", run_check, iterations=3)
        bench.run()
        bench.print_report()
    """

    def __init__(self):
        self.benchmarks: List[Dict] = []
        self.results: List[BenchmarkResult] = []

    def add(self, name: str, func: Callable, iterations: int = 5,
            args: tuple = (), kwargs: Optional[dict] = None) -> "Benchmark":
        """Add a benchmark test."""
        self.benchmarks.append({
            "name": name,
            "func": func,
            "iterations": iterations,
            "args": args,
            "kwargs": kwargs or {},
        })
        return self

    def run(self) -> List[BenchmarkResult]:
        """Run all benchmarks and return results."""
        self.results = []

        for bench in self.benchmarks:
            console.print(f"Running benchmark: [bold]{bench['name']}[/bold]")
            times = []

            for i in range(bench["iterations"]):
                start = time.perf_counter()
                try:
                    bench["func"](*bench["args"], **bench["kwargs"])
                except Exception as e:
                    console.print(f"  [red]Iteration {i + 1} failed: {e}[/red]")
                    continue
                times.append(time.perf_counter() - start)
                console.print(f"  Iteration {i + 1}: {times[-1]:.3f}s")

            self.results.append(BenchmarkResult(name=bench["name"], iterations=bench["iterations"], times=times))

        return self.results

    def print_report(self) -> None:
        """Print benchmark results as a table."""
        if not self.results:
            console.print("No benchmark results. Run benchmarks first.")
            return

        table = Table(title="Benchmark Report")
        for column in ("Benchmark", "Runs", "Mean (s)", "Median (s)", "Std Dev (s)", "Status"):
            table.add_column(column)
        for result in self.results:
            table.add_row(
                result.name,
                f"{len(result.times)}/{result.iterations}",
                f"{result.mean:.3f}",
                f"{result.median:.3f}",
                f"{result.std_dev:.3f}",
                result.status,
            )
        console.print(table)

    def get_results_dict(self) -> List[dict]:
        """Get results as list of dictionaries."""
        return [r.to_dict() for r in self.results]


# =============================================================================
# SYSTEM BENCHMARK (MAIN)
# =============================================================================

def run_system_benchmark() -> List[dict]:
    """
    Time the heavy numerical paths: the ESA test on a 2000-sample curve in its
    ESA parameter, and classification on clean and noisy samples.
    """
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).parent))

    import numpy as np

    from agents.curve_generator import to_esa_parameter
    from geometry.affinity import esa_check
    from geometry.classify import classify
    from geometry.generators import generate
    from geometry.numerics import snap_to_grid
    from models.curve import SampledCurve
    from models.family import EsaClass, FamilySpec, Sign

    console.rule("AESTHETICA CURVE TOOLKIT - BENCHMARK SUITE")
    console.print(f"Started at: {datetime.now().isoformat()}")

    spiral = generate(FamilySpec(EsaClass(Sign.PLUS, 1.0), (0.5, 4.0), 2000))
    in_t = to_esa_parameter(spiral, 1.0)
    eps = snap_to_grid(np.linspace(0.05, 0.5, 10), in_t.step)

    rng = np.random.default_rng(7)
    noisy = SampledCurve(
        spiral.params,
        spiral.points * (1.0 + 1e-4 * rng.standard_normal(spiral.points.shape)),
        spiral.kind,
        dict(spiral.meta),
    )

    bench = Benchmark()
    bench.add("ESA check (2000 samples, 10 shifts)", esa_check, iterations=3, args=(in_t, eps))
    bench.add("Classify (clean, curvature route)", classify, iterations=3, args=(spiral,))
    bench.add("Classify (noisy, point fit)", classify, iterations=3, args=(noisy,))

    bench.run()
    bench.print_report()
    print_profile_report()

    return bench.get_results_dict()


if __name__ == "__main__":
    run_system_benchmark()
