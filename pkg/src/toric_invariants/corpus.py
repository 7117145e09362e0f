"""The bundled corpus of complexes, characteristic pairs and arrangements."""

import random
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from toric_invariants.documents import ComplexDocument, Document, PairDocument, load_document
from toric_invariants.exceptions import DocumentError
from toric_invariants.simplicial import SimplicialComplex, build_complex


def corpus_dir() -> Path:
    return Path(str(resources.files("toric_invariants") / "corpus"))


def corpus_names(directory: Optional[Path] = None) -> list[str]:
    return sorted(path.stem for path in (directory or corpus_dir()).glob("*.json"))


def resolve_document_path(reference: Union[str, Path], directory: Optional[Path] = None) -> Path:
    """A file path if it exists, otherwise the bundled entry with that stem."""
    path = Path(reference)
    if path.exists():
        return path
    bundled = (directory or corpus_dir()) / f"{path.stem}.json"
    if bundled.exists():
        return bundled
    raise DocumentError(
        f"No such file, and no bundled corpus entry named '{path.stem}'.\n"
        f"Bundled entries: {', '.join(corpus_names(directory))}",
        path=str(reference),
    )


def load_corpus(name: str, directory: Optional[Path] = None) -> Document:
    return load_document(resolve_document_path(name, directory))


def corpus_complexes(directory: Optional[Path] = None) -> dict[str, SimplicialComplex]:
    """Every complex document, plus the spheres underlying the pair documents, by stem."""
    out = {}
    for name in corpus_names(directory):
        document = load_corpus(name, directory)
        if isinstance(document, ComplexDocument):
            out[name] = document.to_complex()
        elif isinstance(document, PairDocument):
            out[name] = document.complex.to_complex()
    return out


def corpus_spheres(directory: Optional[Path] = None) -> dict[str, SimplicialComplex]:
    """Complex documents that triangulate spheres."""
    non_spheres = {"torus9", "three-points", "simplex"}
    return {
        name: K for name, K in corpus_complexes(directory).items()
        if name not in non_spheres and not isinstance(load_corpus(name, directory), PairDocument)
    }


def random_complexes(count: int, seed: int, max_vertices: int = 7) -> list[SimplicialComplex]:
    """Reproducible pseudo-random complexes, ghost vertices allowed."""
    rng = random.Random(seed)
    complexes = []
    for k in range(count):
        m = rng.randint(2, max_vertices)
        generators = []
        for _ in range(rng.randint(1, 2 * m)):
            size = rng.randint(1, min(m, 4))
            generators.append(tuple(sorted(rng.sample(range(1, m + 1), size))))
        complexes.append(build_complex(m, generators, name=f"random-{seed}-{k}"))
    return complexes
