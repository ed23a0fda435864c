from src.groups.cayley import IDENTITY, CayleyGroup, GroupHom, Subgroup

__all__ = ["IDENTITY", "CayleyGroup", "GroupHom", "Subgroup"]
