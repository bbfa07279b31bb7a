"""Workbench for SE-model based semantic updates of answer-set programs.

Submodules:

    syntax       rules, programs, classical formulas, parsing and printing
    semantics    SE-models, answer sets, strong equivalence
    realization  program synthesis from well-defined SE-model sets
    orders       preorder assignments and their property checkers
    update       the update operator, postulate suite, support checkers
    cli          command-line front end
"""

__version__ = "0.1.0"
