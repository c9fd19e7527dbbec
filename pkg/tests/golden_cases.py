"""Fixed CLI invocations whose output is frozen under tests/golden/."""

CASES = {
    "bound": ["bound", "--intervals", "{data}/set.csv", "--t", "5", "--form", "sum",
              "--sided", "both", "--kind", "both"],
    "lemma": ["lemma", "--a", "-2", "--b", "1", "--s-max", "10", "--s-steps", "200"],
    "simulate": ["simulate", "--intervals", "{data}/set.csv", "--t", "5", "--reps", "100000",
                 "--seed", "7"],
    "invert": ["invert", "--a", "-2", "--b", "1", "--t", "0.2", "--delta", "0.05",
               "--kind", "improved"],
    "compare": ["compare", "--intervals", "{data}/set.csv", "--t-grid", "1:10:10"],
    "error_bad_t": ["bound", "--intervals", "{data}/set.csv", "--t", "-1"],
    "error_empty": ["bound", "--intervals", "{data}/empty.csv", "--t", "5"],
}

EXIT_CODES = {
    "bound": 0,
    "lemma": 0,
    "simulate": 0,
    "invert": 0,
    "compare": 0,
    "error_bad_t": 2,
    "error_empty": 2,
}
