"""Attribute-role suggestion from column names.

The shipped lexicon covers the legally protected sensitive categories
(racial/ethnic origin, religion, political opinion, union membership,
health, sexual life, genetic and biometric data) with Portuguese and
English terms.  The classification is a suggestion only; source specs
may override any role.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .microdata import Role

DEFAULT_IDENTIFIER_TERMS = [
    "name",
    "nome",
    "cpf",
    "cnpj",
    "rg",
    "passport",
    "passaporte",
    "social_security",
    "document",
    "documento",
    "email",
    "phone",
    "telefone",
    "endereco",
    "address",
]


def load_lexicon(source: str | Path) -> list[str]:
    """Read a lexicon file: one term per line, ``#`` starts a comment."""
    text = Path(source).read_text(encoding="utf-8")
    terms = []
    for line in text.splitlines():
        term = line.split("#", 1)[0].strip()
        if term:
            terms.append(term)
    return terms


def default_lexicon() -> list[str]:
    data = resources.files("statcommons.privacy").joinpath(
        "data/sensitive_terms.txt"
    )
    terms = []
    for line in data.read_text(encoding="utf-8").splitlines():
        term = line.split("#", 1)[0].strip()
        if term:
            terms.append(term)
    return terms


def classify_attributes(
    names: list[str],
    lexicon: list[str] | None = None,
    identifier_terms: list[str] | None = None,
) -> list[Role]:
    """Suggest a role per attribute name.

    Sensitive-term match wins, then direct-identifier match; everything
    else defaults to quasi-identifier (the cautious choice: unknown
    attributes count toward re-identification risk).
    """
    if lexicon is None:
        lexicon = default_lexicon()
    if identifier_terms is None:
        identifier_terms = DEFAULT_IDENTIFIER_TERMS
    sensitive = [t.lower() for t in lexicon]
    identifiers = [t.lower() for t in identifier_terms]
    roles = []
    for name in names:
        lowered = name.lower()
        if any(term in lowered for term in sensitive):
            roles.append(Role.SENSITIVE)
        elif any(term in lowered for term in identifiers):
            roles.append(Role.IDENTIFIER)
        else:
            roles.append(Role.QUASI_IDENTIFIER)
    return roles
