#!/usr/bin/env python3
"""Runs an SMT-LIB script through the cvc5 Python bindings.

Usage: cvc5_solver.py FILE

Prints the responses of the script's commands (check-sat, get-model, ...)
the way the cvc5 executable would, so it can stand in for `z3 -smt2`.
"""
import sys

import cvc5


def main() -> int:
    if len(sys.argv) != 2:
        print("usage: cvc5_solver.py FILE", file=sys.stderr)
        return 1
    tm = cvc5.TermManager()
    solver = cvc5.Solver(tm)
    # Constant arrays (`(as const ...)`) need the extended array solver.
    solver.setOption("arrays-exp", "true")
    symbols = cvc5.SymbolManager(tm)
    parser = cvc5.InputParser(solver, symbols)
    parser.setFileInput(cvc5.InputLanguage.SMT_LIB_2_6, sys.argv[1])
    while True:
        cmd = parser.nextCommand()
        if cmd.isNull():
            break
        out = cmd.invoke(solver, symbols)
        if out:
            sys.stdout.write(out)
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
