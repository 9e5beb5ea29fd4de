"""gcyclo - linear complexity of generalized cyclotomic binary sequences of period p^n."""

__version__ = "0.1.0"
__author__ = "gcyclo Team"
