"""Fixed inputs shared by the module tests and the acceptance run."""

MODULE_SUITE = {
    "m+R": [["x", "0"], ["y", "0"], ["0", "1"]],
    "m+m": [["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]],
    "m2+R": [["x^2", "0"], ["x*y", "0"], ["y^2", "0"], ["0", "1"]],
    "R2": [["1", "0"], ["0", "1"]],
    "R3": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "m+m+R": [["x", "0", "0"], ["y", "0", "0"], ["0", "x", "0"], ["0", "y", "0"], ["0", "0", "1"]],
    "m2+m": [["x^2", "0"], ["x*y", "0"], ["y^2", "0"], ["0", "x"], ["0", "y"]],
    "twisted": [["x", "0"], ["y", "x"], ["0", "y"]],
    "deformed m+R": [["x", "y^2"], ["y", "0"], ["x*y", "1"]],
    "deformed m+m": [["x", "y"], ["y", "0"], ["0", "x"], ["x^2", "y"]],
}

NOT_CLOSED_MODULE = [["x^2", "0"], ["y^2", "0"], ["0", "1"]]
