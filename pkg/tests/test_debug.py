import logging

import gsn_linalg as la
from extras import configure_logging
from gsn_debug import (format_key, format_matrix, format_tree, format_vector, pprint_matrix,
                       pprint_triangulation)
from gsn_diagram import TreeBasisVector, TreeVector, f_move
from gsn_surface import torus


def test_format_key():
    assert format_key(((), ())) == "<1>"
    assert format_key(((1, 2), (1, 0))) == "<1 2 | 1 0>"
    assert format_key((((1, ("z", 0)),), (1,))) == "<1[('z', 0)] | 1>"


def test_format_tree():
    assert format_tree(("n", 0, ("l", 1), ("l", 1))) == "(1 1)_0"


def test_format_vector(vec_z2):
    assert format_vector(TreeVector(vec_z2)) == "0"
    v = TreeVector.basis(vec_z2, (1, 1), (1, 0))
    assert format_vector(v).endswith("<1 1 | 1 0>")
    assert format_vector(TreeBasisVector.from_comb(v)).endswith("(1 1)_0")


def test_format_matrix():
    assert format_matrix(la.zeros(0, 3)) == "[0x3 empty]"
    assert len(format_matrix(la.identity(2)).splitlines()) == 2


def test_printers(capsys, vec_z2):
    pprint_matrix(la.identity(3))
    pprint_triangulation(torus(vec_z2.group))
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 + 2 + 1
    assert lines[3].startswith("T0")
    assert lines[-1] == "v0  marked"


def test_trace_logs_moves(caplog, ising):
    configure_logging("DEBUG")
    s = ising.index_of("sigma")
    v = TreeBasisVector.from_comb(TreeVector.basis(ising, (s, s, s), (s, 0, s)))
    try:
        with caplog.at_level(logging.DEBUG, logger="gsn.trace"):
            f_move(v, (0,))
    finally:
        configure_logging("WARNING")
    assert any(r.name == "gsn.trace" and "f_move" in r.getMessage() for r in caplog.records)
