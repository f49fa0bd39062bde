"""Weisfeiler-Lehman subtree signatures and kernel over labeled graphs.

Diffusion networks are symmetrized and labeled either by user identity or by
susceptibility class. Signature: at iteration 0 the histogram of compressed
raw labels; each following iteration relabels every node with the compression
of (own label, sorted multiset of neighbor labels). All graphs that will be
compared must share one compression dictionary. The kernel is the sum over
iterations of histogram inner products; the normalized variant lies in [0, 1].
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .diffusion import DiffusionNetwork

IDENTITY = "identity"
SUSCEPTIBILITY_CLASS = "susceptibility_class"
LABELING_SCHEMES = (IDENTITY, SUSCEPTIBILITY_CLASS)


class WLDictionary:
    """Shared label-compression table; assigns dense ids in first-seen order."""

    def __init__(self):
        self._ids: dict = {}

    def encode(self, label: str) -> int:
        if label not in self._ids:
            self._ids[label] = len(self._ids)
        return self._ids[label]

    def __len__(self) -> int:
        return len(self._ids)


@dataclass(frozen=True)
class LabeledGraph:
    nodes: tuple
    adjacency: dict  # node -> tuple of neighbors (undirected, sorted)
    labels: dict  # node -> label string
    scheme: str


def labeled_graph(network: DiffusionNetwork, scheme: str, model=None) -> LabeledGraph:
    if scheme not in LABELING_SCHEMES:
        raise ValueError(f"scheme must be one of {LABELING_SCHEMES}, got {scheme!r}")
    und = {v: set() for v in network.nodes}
    for u, v in network.edges:
        und[u].add(v)
        und[v].add(u)
    nodes = tuple(network.sorted_nodes())
    if scheme == IDENTITY:
        labels = {v: v for v in nodes}
    else:
        if model is None:
            raise ValueError("susceptibility_class labeling requires a model")
        labels = {v: model.classify(v) for v in nodes}
    return LabeledGraph(
        nodes=nodes,
        adjacency={v: tuple(sorted(und[v])) for v in nodes},
        labels=labels,
        scheme=scheme,
    )


@dataclass(frozen=True)
class WLSignature:
    h: int
    dictionary: WLDictionary
    histograms: tuple  # one Counter per iteration 0..h


def wl_signature(graph: LabeledGraph, h: int, dictionary: WLDictionary) -> WLSignature:
    if h < 0:
        raise ValueError("h must be >= 0")
    current = {v: dictionary.encode(graph.labels[v]) for v in graph.nodes}
    histograms = [Counter(current.values())]
    for _ in range(h):
        relabeled = {}
        for v in graph.nodes:
            neighborhood = ",".join(str(c) for c in
                                    sorted(current[u] for u in graph.adjacency[v]))
            relabeled[v] = dictionary.encode(f"{current[v]}|{neighborhood}")
        current = relabeled
        histograms.append(Counter(current.values()))
    return WLSignature(h=h, dictionary=dictionary, histograms=tuple(histograms))


def wl_kernel(a: WLSignature, b: WLSignature) -> float:
    if a.h != b.h:
        raise ValueError(f"signature iteration counts differ: {a.h} vs {b.h}")
    if a.dictionary is not b.dictionary:
        raise ValueError("signatures were built with different compression dictionaries")
    total = 0.0
    for ha, hb in zip(a.histograms, b.histograms):
        small, large = (ha, hb) if len(ha) <= len(hb) else (hb, ha)
        total += float(sum(count * large.get(label, 0) for label, count in small.items()))
    return total


def wl_kernel_normalized(a: WLSignature, b: WLSignature) -> float:
    k = wl_kernel(a, b)
    if k == 0.0:
        return 0.0
    kaa = wl_kernel(a, a)
    kbb = wl_kernel(b, b)
    if kaa == 0.0 or kbb == 0.0:
        return 0.0
    return k / (kaa * kbb) ** 0.5


def similarity_features(target: DiffusionNetwork, training_fake, training_true,
                        model, h: int = 3) -> tuple:
    """Mean normalized kernel of the target to each training reference class.

    Returns (fake_identity, true_identity, fake_class, true_class), each in
    [0, 1]; a feature is 0 when its reference set is empty.
    """
    fakes = sorted(training_fake, key=lambda n: n.news_id)
    trues = sorted(training_true, key=lambda n: n.news_id)
    values = []
    for scheme in (IDENTITY, SUSCEPTIBILITY_CLASS):
        dictionary = WLDictionary()
        sig_target = wl_signature(labeled_graph(target, scheme, model), h, dictionary)
        sims = {}
        for name, refs in (("fake", fakes), ("true", trues)):
            if not refs:
                sims[name] = 0.0
                continue
            total = 0.0
            for ref in refs:
                sig_ref = wl_signature(labeled_graph(ref, scheme, model), h, dictionary)
                total += wl_kernel_normalized(sig_target, sig_ref)
            sims[name] = total / len(refs)
        values.extend((sims["fake"], sims["true"]))
    return tuple(values)


class SimilarityIndex:
    """Batch form of similarity_features for one training fold.

    Signatures for every network are computed once per labeling scheme with
    one shared dictionary, then each target is compared against the training
    references by label.
    """

    def __init__(self, networks: dict, training_news, model, h: int = 3):
        training = set(training_news)
        self.h = h
        order = sorted(networks)
        self._sigs = {}
        for scheme in LABELING_SCHEMES:
            dictionary = WLDictionary()
            self._sigs[scheme] = {
                news: wl_signature(labeled_graph(networks[news], scheme, model),
                                   h, dictionary)
                for news in order
            }
        self._fake_refs = [n for n in order
                           if n in training and networks[n].label == "fake"]
        self._true_refs = [n for n in order
                           if n in training and networks[n].label == "true"]

    def features(self, news_id) -> tuple:
        values = []
        for scheme in LABELING_SCHEMES:
            sigs = self._sigs[scheme]
            target = sigs[news_id]
            for refs in (self._fake_refs, self._true_refs):
                if not refs:
                    values.append(0.0)
                    continue
                total = sum(wl_kernel_normalized(target, sigs[r]) for r in refs)
                values.append(total / len(refs))
        return tuple(values)


def write_gram_matrix(signatures: dict, path) -> None:
    """Normalized Gram matrix over a batch of signatures, for diagnostics."""
    from .util import write_csv

    names = sorted(signatures)
    rows = [[a] + [wl_kernel_normalized(signatures[a], signatures[b]) for b in names]
            for a in names]
    write_csv(path, ["graph"] + names, rows)
