"""Exception types raised across the pipeline.

Every data-level failure derives from CurralignError so the CLI can map
them uniformly to exit code 2; usage errors are handled separately.
"""


class CurralignError(Exception):
    """Base class for all data/pipeline errors."""


# --- catalog ---------------------------------------------------------------

class MissingColumn(CurralignError):
    def __init__(self, name: str):
        super().__init__(f"missing required column: {name!r}")
        self.name = name


class DuplicateCode(CurralignError):
    def __init__(self, code: str, row: int):
        super().__init__(f"duplicate LO code {code!r} at row {row}")
        self.code = code
        self.row = row


class BadGrade(CurralignError):
    def __init__(self, row: int, value: str = ""):
        super().__init__(f"bad grade {value!r} at row {row} (expected integer 1..12)")
        self.row = row
        self.value = value


class EmptyText(CurralignError):
    def __init__(self, row: int):
        super().__init__(f"empty LO text at row {row}")
        self.row = row


class MalformedCode(CurralignError):
    def __init__(self, code: str):
        super().__init__(f"malformed LO code: {code!r}")
        self.code = code


# --- textprep --------------------------------------------------------------

class UnsupportedLanguage(CurralignError):
    def __init__(self, tag: str):
        super().__init__(f"no stop-word list for language tag {tag!r}")
        self.tag = tag


# --- embed -----------------------------------------------------------------

class MissingVector(CurralignError):
    def __init__(self, lo_code: str):
        super().__init__(f"no precomputed vector for {lo_code!r}")
        self.lo_code = lo_code


class DimMismatch(CurralignError):
    def __init__(self, expected: int, found: int):
        super().__init__(f"dimension mismatch: expected {expected}, found {found}")
        self.expected = expected
        self.found = found


class ZeroVector(CurralignError):
    def __init__(self, what: str = "vector"):
        super().__init__(f"cosine undefined for zero-flagged {what}")


class BadMagic(CurralignError):
    def __init__(self, found: bytes):
        super().__init__(f"not an embedding cache file (magic {found!r})")
        self.found = found


class ChecksumMismatch(CurralignError):
    def __init__(self, what: str):
        super().__init__(f"checksum mismatch: {what}")
        self.what = what


class TruncatedFile(CurralignError):
    def __init__(self, path: str):
        super().__init__(f"truncated file: {path}")
        self.path = path


# --- topics ----------------------------------------------------------------

class DegenerateInput(CurralignError):
    def __init__(self, why: str = "input has zero variance"):
        super().__init__(why)


class BadK(CurralignError):
    def __init__(self, k: int, n: int):
        super().__init__(f"k={k} invalid for n={n} points (need 1 <= k <= n)")
        self.k = k
        self.n = n


class NoTopics(CurralignError):
    def __init__(self):
        super().__init__("no non-outlier topics to label")


# --- alignment -------------------------------------------------------------

class CoverageGap(CurralignError):
    def __init__(self, lo_code: str):
        super().__init__(f"topic assignment missing LO {lo_code!r}")
        self.lo_code = lo_code


class EmptyScope(CurralignError):
    def __init__(self):
        super().__init__("scope filter matches no subjects")


class UnknownSubject(CurralignError):
    def __init__(self, subject: str):
        super().__init__(f"unknown subject {subject!r}")
        self.subject = subject


class TooFewSubjects(CurralignError):
    def __init__(self, n: int):
        super().__init__(f"hierarchical clustering needs >= 2 subjects, got {n}")
        self.n = n


# --- validation ------------------------------------------------------------

class MissingStrandLabels(CurralignError):
    def __init__(self):
        super().__init__("strand-level consistency requires non-empty strand labels")


class UnknownCode(CurralignError):
    def __init__(self, code: str):
        super().__init__(f"unknown LO code {code!r}")
        self.code = code


class EmptyLabelSet(CurralignError):
    def __init__(self):
        super().__init__("labeled pair set is empty")


class BadLabel(CurralignError):
    def __init__(self, row: int, value: str):
        super().__init__(f"label must be related/unrelated, got {value!r} at row {row}")
        self.row = row
        self.value = value


class DuplicatePair(CurralignError):
    def __init__(self, code_a: str, code_b: str):
        super().__init__(f"duplicate labeled pair ({code_a!r}, {code_b!r})")
        self.code_a = code_a
        self.code_b = code_b


class BadProgramFile(CurralignError):
    def __init__(self, line: int, why: str):
        super().__init__(f"bad program definition at line {line}: {why}")
        self.line = line


# --- runstore --------------------------------------------------------------

class PartialRun(CurralignError):
    def __init__(self, missing: str):
        super().__init__(f"pipeline stage missing: {missing}")
        self.missing = missing


class IoFailure(CurralignError):
    def __init__(self, why: str):
        super().__init__(f"i/o failure: {why}")


class SchemaVersionUnsupported(CurralignError):
    def __init__(self, found: int, supported: int):
        super().__init__(f"run schema version {found} unsupported (this build reads {supported})")
        self.found = found
        self.supported = supported


class EmptyRun(CurralignError):
    def __init__(self):
        super().__init__("run snapshot contains no learning outcomes")
