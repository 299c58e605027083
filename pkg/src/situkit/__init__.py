"""situkit: situation-calculus reasoning core with plugin fluents/actions,
ontology-authoring and contingent-scaffolding libraries, and an
event-sourced tutoring service where each project is one situation term.
"""

__version__ = "0.1.0"
