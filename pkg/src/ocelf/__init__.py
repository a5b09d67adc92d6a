"""Native feature extraction and encoding for object-centric event logs."""

from .errors import (
    DomainError,
    InputError,
    IoError,
    NotInExecution,
    OcelfError,
    ParseError,
    SchemaError,
    SpecGrammarError,
    TypeMismatch,
    UnknownEvent,
    UnknownObject,
    UnknownType,
    UnsupportedSpec,
)
from .model import EventLog, ValidationReport, Violation, objects_of, validate
from .ocel_io import parse_ocel, write_ocel
from .object_graph import (
    ObjectGraph,
    build_object_graph,
    connected_components,
    distance,
)
from .executions import (
    ExecutionGraph,
    LeadExtraction,
    ProcessExecution,
    build_execution_graph,
    extract_components,
    extract_leading_type,
    extract_leading_type_report,
    predecessors,
)
from .features import (
    FeatureMatrix,
    FeatureSpec,
    compute,
    compute_matrix,
    expand_specs,
    parse_spec,
)
from .encoders import (
    GraphEncoding,
    SequentialEncoding,
    TabularEncoding,
    encode_graph,
    encode_sequential,
    encode_tabular,
    sublog_timeseries,
)

__version__ = "0.1.0"

__all__ = [
    "EventLog",
    "ValidationReport",
    "Violation",
    "ObjectGraph",
    "ProcessExecution",
    "ExecutionGraph",
    "LeadExtraction",
    "FeatureSpec",
    "FeatureMatrix",
    "TabularEncoding",
    "SequentialEncoding",
    "GraphEncoding",
    "parse_ocel",
    "write_ocel",
    "validate",
    "objects_of",
    "build_object_graph",
    "connected_components",
    "distance",
    "extract_components",
    "extract_leading_type",
    "extract_leading_type_report",
    "build_execution_graph",
    "predecessors",
    "compute",
    "compute_matrix",
    "expand_specs",
    "parse_spec",
    "encode_tabular",
    "encode_sequential",
    "encode_graph",
    "sublog_timeseries",
    "OcelfError",
    "InputError",
    "ParseError",
    "SchemaError",
    "IoError",
    "DomainError",
    "UnknownEvent",
    "UnknownObject",
    "UnknownType",
    "NotInExecution",
    "TypeMismatch",
    "UnsupportedSpec",
    "SpecGrammarError",
]
