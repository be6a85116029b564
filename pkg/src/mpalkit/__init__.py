"""Exact toolkit for m-palindromic continued fractions."""

from .cf import ConvergentTable, Mat2, Rational, convergents, evaluate, evaluate_with_tail, simplify, word_matrix
from .errors import MpalError
from .mpal import DensityReport, MPalCertificate, certify, density_estimate, is_m_palindrome, mpal_prefixes
from .quadratic import EventuallyPeriodicWord, QuadraticIrrational, Split, burger_split, is_reduced, periodic_value
from .word import Word, WordStream, concat, is_palindrome_word, is_standard, occurrences, power, reverse

__version__ = "0.1.0"
