"""oometrics: static object-oriented source code quality measurement.

Parse a Java-like source subset (or load a language-neutral facts file)
into a class model, compute the classic OO metric catalog (CK suite,
coupling, LCOM family, QMOOD, MOOD, McCabe complexities, maintainability
index, SIG ratings, evolution/churn metrics), evaluate quality criteria
against acceptable ranges, and emit ranked reports, Kiviat charts and
scatter data.
"""

from .model import SystemModel, build_system_model, facts_to_model, load_facts, model_to_facts

__version__ = "0.1.0"

__all__ = [
    "SystemModel",
    "build_system_model",
    "facts_to_model",
    "load_facts",
    "model_to_facts",
    "__version__",
]
