"""JSON export: results wrapped in a standard envelope with a _meta section.

Everything except _meta.generated_at is deterministic, so two runs on the
same input differ only in that timestamp.
"""

from datetime import datetime, timezone

SCHEMA_VERSION = 1


def envelope(section: str, payload: dict, **meta) -> dict:
    """Wrap a payload with the _meta block.

    Args:
        section: Name of the result kind, e.g. "hequiver"
        payload: JSON-serializable result fields
        **meta: Extra _meta fields such as the orientation

    Returns:
        Dict ready for JSON serialization
    """
    return {
        "_meta": {
            "section": section,
            "schema_version": SCHEMA_VERSION,
            "generated_at": datetime.now(timezone.utc).isoformat(),
            **meta,
        },
        **payload,
    }


def export_hom(source, target, maps) -> dict:
    return envelope(
        "hom",
        {
            "source": source.label,
            "target": target.label,
            "dim": len(maps),
            "basis": [g.to_dict() for g in maps],
        },
        orientation=str(source.orientation),
    )


def export_ext(source, target, classes) -> dict:
    return envelope(
        "ext",
        {
            "source": source.label,
            "target": target.label,
            "dim": len(classes),
            "basis": [c.to_dict() for c in classes],
        },
        orientation=str(source.orientation),
    )


def export_homext(
    chi,
    quiver,
    exceptional: bool,
    linear_extensions: int | None = None,
    orderings: list | None = None,
    witness: list[str] | None = None,
    poset: list | None = None,
    fans: dict | None = None,
) -> dict:
    """Hom-Ext quiver of a collection with its exceptionality verdict.

    Args:
        chi: ModuleSet the quiver was built from
        quiver: QuiverWithRelations with degrees, or None when not exceptional
        exceptional: Whether the collection is exceptional
        linear_extensions: Number of linear extensions of the arrow order
        orderings: Exceptional orderings as lists of labels
        witness: Reasons the collection is not exceptional
        poset: Pairs [x, y] with x <= y, x != y, in the order the arrows generate
        fans: Module labels of each marked point's complete fan, clockwise

    Returns:
        Dict ready for JSON serialization
    """
    payload = {"modules": chi.labels, "exceptional": exceptional}
    if quiver is not None:
        payload["quiver"] = quiver.to_dict()
    if poset is not None:
        payload["poset"] = poset
    if fans is not None:
        payload["fans"] = fans
    if linear_extensions is not None:
        payload["linear_extensions"] = linear_extensions
    if orderings is not None:
        payload["orderings"] = [[m.label for m in seq] for seq in orderings]
    if witness:
        payload["witness"] = witness
    return envelope("hequiver", payload, orientation=str(chi.orientation))


def export_classification(eps, classes, max_winding: int, total: int) -> dict:
    return envelope(
        "classify",
        {
            "max_winding": max_winding,
            "sets": total,
            "classes": [c.to_dict() for c in classes],
        },
        orientation=str(eps),
    )


def export_superquiver(chi, superquiver) -> dict:
    return envelope(
        "superquiver",
        {"modules": chi.labels, "superquiver": superquiver.to_dict()},
        orientation=str(chi.orientation),
    )


def export_oracle(source, target, values: dict) -> dict:
    return envelope(
        "oracle",
        {"source": source.label, "target": target.label, **values},
        orientation=str(source.orientation),
    )


def export_check(eps_list, results: dict) -> dict:
    return envelope("check", results, orientations=[str(e) for e in eps_list])
