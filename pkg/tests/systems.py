"""The systems used throughout the tests: (ring spec, n, l, equations)."""

TEST_SYSTEMS = [
    ("QQ", 1, 1, ["y^2 - x"]),
    ("QQ", 1, 1, ["y^2 - x^3"]),
    ("QQ", 1, 1, ["y*(y - x)"]),
    ("GF(2)", 1, 1, ["y^2 + x*y - x"]),
    ("QQ", 1, 2, ["y1 + y2^2", "y2 + x"]),
    ("QQ", 2, 1, ["y^3 - x1*y - x2"]),
    ("QQ", 2, 2, ["y1^2 - x1*y2 + x2 - 1", "y2^2 - x1^2 + y1*x2 - 1"]),
    ("GF(5)", 1, 2, ["y1^2 - x*y2", "y2^2 - y1 - x"]),
]
