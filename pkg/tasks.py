"""Invoke tasks for the project"""

from invoke import task


@task
def runtest(cmd, file=None):
    """Run tests."""
    if file:
        cmd.run(f"pytest src/tests/{file}.py")
    else:
        cmd.run("pytest src/tests")


@task
def spectrum(cmd, config=None, out="spectrum.csv", fmt="csv"):
    """Sweep the absorber and write its spectrum."""
    options = f" --config {config}" if config else ""
    cmd.run(f"python -m src.main spectrum{options} --out {out} --format {fmt}")


@task
def validate(cmd, config=None, out="validation.json"):
    """Check the circuit model against the transfer-matrix oracle."""
    options = f" --config {config}" if config else ""
    cmd.run(f"python -m src.main validate{options} --out {out}")
