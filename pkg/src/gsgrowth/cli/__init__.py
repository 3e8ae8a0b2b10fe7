from .formats import (group_from_json, group_to_json, module_from_json, module_to_json, parse_presentation,
                      select_subgroup, serialize_presentation)
from .main import main, run
