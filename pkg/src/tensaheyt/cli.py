# Copyright the tensaheyt authors, 2026.
# SPDX-License-Identifier: LGPL-3.0-or-later

from collections.abc import Generator
from contextlib import contextmanager
from pathlib import Path

import click

import tensaheyt.deployment as d
from tensaheyt import duality as du
from tensaheyt import filters as fi
from tensaheyt import logic as lo
from tensaheyt.examples import iter_corpus, parse_example
from tensaheyt.formats import dump_algebra, dump_space, parse_algebra, parse_map, parse_space
from tensaheyt.homomorphisms import AlgebraMorphism, check_homomorphism
from tensaheyt.lattices import enumerate_filters, is_prime_filter
from tensaheyt.reports import Report
from tensaheyt.tense import TenseHAlgebra, check_axioms, check_derived_laws
from tensaheyt.types import Element, FormatError, TensaheytError

LOGGER = d.LOGGER


class InputError(click.ClickException):
    """Bad input, bad configuration or an exhausted cap."""

    exit_code = 2


@contextmanager
def diagnostics() -> Generator[None, None, None]:
    try:
        yield
    except TensaheytError as exc:
        raise InputError(str(exc)) from exc


def emit(report: Report, as_json: bool) -> None:
    """Print the report; a failed check ends the command with status 1."""
    if as_json:
        click.echo(report.render_json())
    else:
        click.echo(report.render_text(), nl=False)

    if not report.passed:
        raise click.exceptions.Exit(1)


def read_algebra(path: str) -> TenseHAlgebra:
    return parse_algebra(Path(path).read_text(encoding="utf-8"))


def split_names(text: str) -> list[str]:
    return [name.strip() for name in text.split(",") if name.strip()]


def elements(A: TenseHAlgebra, text: str) -> list[Element]:
    return [A.index(name) for name in split_names(text)]


def parse_assignment(A: TenseHAlgebra, text: str) -> dict[int, Element]:
    assignment = {}
    for item in split_names(text):
        var, sep, value = item.partition("=")
        if not sep or not var.startswith("x") or not var[1:].isdigit():
            raise FormatError(f"bad assignment {item!r}, expected xN=element")
        assignment[int(var[1:])] = A.index(value.strip())

    return assignment


def write_or_echo(text: str, output: str) -> None:
    if output == "-":
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")


json_option = click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON")
algebra_argument = click.argument("file", type=click.Path(exists=True, dir_okay=False))


@click.group()
def cli() -> None:
    pass


# fmt: off
@click.command(help="Check the axioms T1-T8 and the derived laws T9-T14")
@algebra_argument
@json_option
def check(file: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        report = check_axioms(A).extend(check_derived_laws(A))

    emit(report, as_json)


# fmt: off
@click.command(help="List the filters, or only the tense filters")
@algebra_argument
@click.option("--tense", is_flag=True, help="Only tense filters")
@json_option
def filters(file: str, tense: bool, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        if tense:
            lines = [fi.filter_label(A, f) for f in fi.enumerate_tense_filters(A)]
        else:
            lines = [
                fi.filter_label(A, f) + (" prime" if is_prime_filter(A, f) else "")
                for f in enumerate_filters(A)
            ]

    emit(Report(lines=lines), as_json)


# fmt: off
@click.command(help="List the tense congruences with their tense filters")
@algebra_argument
@json_option
def congruences(file: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        lattice = fi.congruence_lattice(A)
        lines = [
            fi.filter_label(A, f) + ": "
            + " ".join(A.poset.set_name(block) for block in theta.blocks())
            for f, theta in zip(lattice.filters, lattice.congruences)
        ]

    emit(Report(lines=lines), as_json)


# fmt: off
@click.command(help="Decide simplicity and subdirect irreducibility")
@algebra_argument
@json_option
def simple(file: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        lines = [
            f"simple {str(fi.is_simple(A)).lower()}",
            f"subdirectly-irreducible {str(fi.is_subdirectly_irreducible(A)).lower()}",
        ]

    emit(Report(lines=lines), as_json)


# fmt: off
@click.command(help="Tense filter generated by a set of elements")
@algebra_argument
@click.option("--from", "generators", default="", help="Comma-separated element names")
@json_option
def generate(file: str, generators: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        f = fi.generated_tense_filter(A, elements(A, generators))

    emit(Report(lines=[fi.filter_label(A, f)]), as_json)


# fmt: off
@click.command(help="Write the dual space of an algebra")
@algebra_argument
@click.option("--output", "-o", default="-", show_default=True, help="Space file, - for stdout")
@json_option
def dualize(file: str, output: str, as_json: bool) -> None:
    with diagnostics():
        text = dump_space(du.dual_space(read_algebra(file)))

    if as_json:
        emit(Report(lines=text.splitlines()), as_json)
    else:
        write_or_echo(text, output)


# fmt: off
@click.command(help="Verify sigma and epsilon, or epsilon and separation for a space file")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--space", is_flag=True, help="FILE is a space file")
@json_option
def roundtrip(file: str, space: bool, as_json: bool) -> None:
    with diagnostics():
        text = Path(file).read_text(encoding="utf-8")
        if space:
            X = parse_space(text)
            report = du.check_space_axioms(X)
            if report.passed:
                report.extend(du.check_epsilon(X)).extend(du.check_separation(X))
        else:
            A = parse_algebra(text)
            report = du.check_sigma(A).extend(du.check_epsilon(du.dual_space(A)))

    emit(report, as_json)


# fmt: off
@click.command(help="Dual of an algebra map, or with --check its homomorphism and m/M reports")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("target", type=click.Path(exists=True, dir_okay=False))
@click.argument("mapfile", type=click.Path(exists=True, dir_okay=False))
@click.option("--check", "checked", is_flag=True, help="Report instead of printing the dual map")
@json_option
def morphism(source: str, target: str, mapfile: str, checked: bool, as_json: bool) -> None:
    with diagnostics():
        A1, A2 = read_algebra(source), read_algebra(target)
        k = AlgebraMorphism.from_names(A1, A2, parse_map(Path(mapfile).read_text(encoding="utf-8")))

        if checked:
            report = check_homomorphism(k)
            if report.passed:
                report.extend(du.check_morphism_equivalence(du.dual_morphism(k)))
        else:
            dual = du.dual_morphism(k)
            report = Report(
                lines=[
                    f"{dual.source.name(x)}->{dual.target.name(y)}"
                    for x, y in enumerate(dual.mapping)
                ]
            )

    emit(report, as_json)


# fmt: off
@click.command(name="eval", help="Value of a formula under an assignment")
@algebra_argument
@click.argument("formula")
@click.option("--assign", default="", help="Comma-separated xN=element pairs")
@json_option
def evaluate(file: str, formula: str, assign: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        value = lo.evaluate(lo.parse(formula), A, parse_assignment(A, assign))

    emit(Report(lines=[A.name(value)]), as_json)


# fmt: off
@click.command(help="Whether a formula evaluates to 1 under every assignment")
@algebra_argument
@click.argument("formula")
@json_option
def valid(file: str, formula: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        report = Report([lo.is_valid(lo.parse(formula), A).finding(A)])

    emit(report, as_json)


# fmt: off
@click.command(help="Search the library or all small frame algebras for a countermodel")
@click.argument("formula")
@click.option("--corpus", "source", flag_value="corpus", default=True, help="Library algebras (default)")
@click.option("--frames", type=click.IntRange(min=1), default=None, help="Frame algebras on up to N points")
@json_option
def countermodel(formula: str, source: str, frames: int | None, as_json: bool) -> None:
    with diagnostics():
        phi = lo.parse(formula)
        algebras = lo.frame_corpus(frames) if frames is not None else iter_corpus()
        found = lo.countermodel_search(phi, algebras)

    if found is None:
        line = "not found"
    else:
        line = "found " + " ".join(f"{k}={v}" for k, v in found.witness().items())

    emit(Report(lines=[line]), as_json)


# fmt: off
@click.command(help="Both sides of the local deduction equivalence")
@algebra_argument
@click.option("--gamma", default="", help="Comma-separated premises")
@click.option("--delta", default="", help="Comma-separated premises to discharge")
@click.option("--psi", required=True, help="Conclusion")
@json_option
def lddt(file: str, gamma: str, delta: str, psi: str, as_json: bool) -> None:
    with diagnostics():
        A = read_algebra(file)
        result = lo.lddt_check(A, elements(A, gamma), elements(A, delta), A.index(psi))

    emit(result.report(A), as_json)


# fmt: off
@click.command(name="gen-example", help="Write a library algebra: ej2, product, extreme:N or frame:N:EDGELIST")
@click.argument("example")
@click.option("--output", "-o", default="-", show_default=True, help="Algebra file, - for stdout")
@json_option
def gen_example(example: str, output: str, as_json: bool) -> None:
    with diagnostics():
        text = dump_algebra(parse_example(example))

    if as_json:
        emit(Report(lines=text.splitlines()), as_json)
    else:
        write_or_echo(text, output)


cli.add_command(check)
cli.add_command(congruences)
cli.add_command(countermodel)
cli.add_command(dualize)
cli.add_command(evaluate)
cli.add_command(filters)
cli.add_command(gen_example)
cli.add_command(generate)
cli.add_command(lddt)
cli.add_command(morphism)
cli.add_command(roundtrip)
cli.add_command(simple)
cli.add_command(valid)


def main() -> None:
    cli(prog_name="tensaheyt")
