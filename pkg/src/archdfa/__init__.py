"""Assembly-oriented analysis of modular product architectures."""

from .adcd import build_adcd, emit_dot
from .codec import MalformedCode, parse_code, serialize_code
from .complexity import architecture_tac, module_set_tac, task_complexity
from .concept import evaluate_concepts
from .document import load
from .matrix import base_module, build_im, strategy_suggestion
from .mim import grouping_hints, mim_summary
from .model import Architecture, InterfaceCode, validate
from .msasm import TABLE6_DEFAULT, assess_architecture, classify, msasm_score

__version__ = "0.1.0"
