import math

import pytest

import pxlap


def test_expression_eval():
    e = pxlap.Expression.parse("1.5 + 0.4*sin(3*x)")
    assert e(0.0) == pytest.approx(1.5)
    assert e(0.5, 2.0) == pytest.approx(1.5 + 0.4 * math.sin(1.5))
    with pytest.raises(ValueError):
        pxlap.Expression.parse("2 +")


def test_mesh_shapes():
    line = pxlap.interval_mesh(0.0, 1.0, 8)
    assert line.dimension == 1
    assert line.vertex_count == 9
    assert line.cell_count == 8
    assert line.domain_measure == pytest.approx(1.0)

    square = pxlap.rectangle_mesh(0.0, 0.0, 1.0, 1.0, 4)
    assert square.dimension == 2
    assert square.vertex_count == 25
    assert square.cell_count == 32
    assert square.is_boundary(0)


def test_luxemburg_norm_constant_field():
    mesh = pxlap.interval_mesh(0.0, 1.0, 16)
    p = pxlap.build_exponent("2", mesh)
    norm = pxlap.luxemburg_norm([3.0] * mesh.cell_count, p, mesh)
    assert norm.value == pytest.approx(3.0, rel=1e-9)
    assert norm.modular_at_value <= 1.0 + 1e-9


def test_exponent_validation():
    mesh = pxlap.interval_mesh(0.0, 1.0, 4)
    with pytest.raises(ValueError):
        pxlap.build_exponent("1", mesh)
    p = pxlap.build_exponent("3", mesh)
    q = pxlap.conjugate(p)
    assert q.samples == pytest.approx([1.5] * mesh.cell_count)


def test_solve_harmonic_datum():
    mesh = pxlap.rectangle_mesh(0.0, 0.0, 1.0, 1.0, 8)
    p = pxlap.build_exponent("2 + x", mesh)
    phi = pxlap.interpolate(pxlap.Expression.parse("x"), mesh)
    zero = pxlap.ScalarField([0.0] * mesh.vertex_count)
    problem = pxlap.DirichletProblem(mesh, p, phi, zero)

    opts = pxlap.SolverOptions()
    opts.residual_tol = 1e-12
    result = pxlap.solve_dirichlet(problem, opts)
    assert result.residual_norm <= 1e-12
    assert max(abs(w - v) for w, v in zip(result.w.nodal, phi.nodal)) <= 1e-10
    assert result.final_regularization == pytest.approx(1e-8)


def test_solver_failure_is_runtime_error():
    mesh = pxlap.interval_mesh(0.0, 1.0, 32)
    p = pxlap.build_exponent("3", mesh)
    zero = pxlap.ScalarField([0.0] * mesh.vertex_count)
    one = pxlap.ScalarField([1.0] * mesh.vertex_count)
    problem = pxlap.DirichletProblem(mesh, p, zero, one)
    opts = pxlap.SolverOptions()
    opts.max_iterations = 1
    with pytest.raises(RuntimeError):
        pxlap.solve_dirichlet(problem, opts)


def test_check_suite():
    outcome = pxlap.run_check_suite("holder", 10, 3)
    assert outcome.all_satisfied
    assert len(outcome.rows) == 10
    assert outcome.rows[0].trial == 1
    assert outcome.rows[0].gap.satisfied


def test_stability_rows():
    mesh = pxlap.interval_mesh(0.0, 1.0, 32)
    p = pxlap.build_exponent("2", mesh)
    phi = pxlap.ScalarField([0.0] * mesh.vertex_count)
    f = pxlap.ScalarField([1.0] * mesh.vertex_count)
    problem = pxlap.DirichletProblem(mesh, p, phi, f)
    schedule = pxlap.make_schedule(p, pxlap.ScheduleDirection.increasing, 2, 0.4)

    report = pxlap.run_stability(problem, schedule)
    assert [row.i for row in report.rows] == [1, 2]
    assert report.rows[0].sup_gap == pytest.approx(0.4)
    assert report.rows[1].sup_gap == pytest.approx(0.2)
    assert report.rows[1].D_grad_modular <= report.rows[0].D_grad_modular
