import os

from hypothesis import HealthCheck, settings, strategies as st

from widthlab.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=0, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, chosen) if keep]
    if connected:
        # thread a random spanning tree through the vertices
        for v in range(1, n):
            u = draw(st.integers(0, v - 1))
            if (u, v) not in edges:
                edges.append((u, v))
    return Graph(n, tuple(edges))


@st.composite
def subdivided(draw, max_n=6, max_s=3):
    from widthlab.graph import subdivide
    g = draw(graphs(min_n=1, max_n=max_n))
    counts = {e: draw(st.integers(0, max_s)) for e in g.edges}
    return subdivide(g, counts)


# acceptance criteria report: test_acceptance records one line per criterion here
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
