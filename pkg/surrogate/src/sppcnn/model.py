"""CNN with spatial pyramid pooling for variable-size adjacency images.

The convolutional stack halves the spatial side once per group (same-padded
convs, ceil-mode 2x2 max pooling), so an N x N input has side ceil(N/2^i)
after group i.  Spatial pyramid pooling then turns the final feature map
into a fixed-length vector regardless of N, which feeds two fully connected
layers ending in a linear output of dimension steps + 1 (attack curve plus
robustness).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import torch
from torch import nn

# (kernel, out_channels, convs_in_group); channel widths 64 -> 512, a single
# 5x5 mid-stack, and a double conv in the last group
FULL_GROUPS: tuple[tuple[int, int, int], ...] = (
    (3, 64, 1),
    (3, 64, 1),
    (5, 64, 1),
    (3, 128, 1),
    (3, 128, 1),
    (3, 256, 1),
    (3, 256, 1),
    (3, 512, 2),
)

# 4-group preset for small inputs (N around 100), where 8 halvings would
# collapse the map to 1x1 long before the stack ends
DESK_GROUPS: tuple[tuple[int, int, int], ...] = FULL_GROUPS[:4]

PYRAMID_LEVELS: tuple[int, ...] = (4, 3, 2, 1)


@dataclass
class ModelConfig:
    output_dim: int                       # steps + 1
    groups: tuple[tuple[int, int, int], ...] = FULL_GROUPS
    pyramid_levels: tuple[int, ...] = PYRAMID_LEVELS
    fc_hidden: int = 1024

    @property
    def last_channels(self) -> int:
        return self.groups[-1][1]

    @property
    def spp_bins(self) -> int:
        return sum(level * level for level in self.pyramid_levels)

    @property
    def spp_length(self) -> int:
        return self.last_channels * self.spp_bins

    def to_dict(self) -> dict:
        return {
            "output_dim": self.output_dim,
            "groups": [list(g) for g in self.groups],
            "pyramid_levels": list(self.pyramid_levels),
            "fc_hidden": self.fc_hidden,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelConfig":
        return cls(
            output_dim=doc["output_dim"],
            groups=tuple(tuple(g) for g in doc["groups"]),
            pyramid_levels=tuple(doc["pyramid_levels"]),
            fc_hidden=doc["fc_hidden"],
        )


def spp(featmap: torch.Tensor, levels=PYRAMID_LEVELS) -> torch.Tensor:
    """Spatial pyramid pooling: adaptive max pooling at each level, flattened
    and concatenated.  Output length C * sum(level^2) for any input size.

    Accepts (C, H, W) or (B, C, H, W).
    """
    squeeze = featmap.dim() == 3
    if squeeze:
        featmap = featmap.unsqueeze(0)
    if featmap.dim() != 4 or featmap.shape[-1] < 1 or featmap.shape[-2] < 1:
        raise ValueError(f"expected a (B, C, H, W) feature map, got {tuple(featmap.shape)}")
    parts = [
        nn.functional.adaptive_max_pool2d(featmap, level).flatten(1)
        for level in levels
    ]
    out = torch.cat(parts, dim=1)
    return out.squeeze(0) if squeeze else out


class CurveNet(nn.Module):
    """Conv groups -> SPP -> two fully connected layers (linear output)."""

    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        layers: list[nn.Module] = []
        in_ch = 1
        for kernel, out_ch, n_convs in config.groups:
            for _ in range(n_convs):
                layers.append(nn.Conv2d(in_ch, out_ch, kernel, stride=1, padding=kernel // 2))
                layers.append(nn.ReLU(inplace=True))
                in_ch = out_ch
            layers.append(nn.MaxPool2d(2, stride=2, ceil_mode=True))
        self.features = nn.Sequential(*layers)
        self.fc = nn.Sequential(
            nn.Linear(config.spp_length, config.fc_hidden),
            nn.ReLU(inplace=True),
            nn.Linear(config.fc_hidden, config.output_dim),
        )

    def forward(self, image: torch.Tensor) -> torch.Tensor:
        """image: (N, N), (1, N, N), or (B, 1, N, N) binary adjacency."""
        batched = image.dim() == 4
        if image.dim() == 2:
            image = image.unsqueeze(0).unsqueeze(0)
        elif image.dim() == 3:
            image = image.unsqueeze(0)
        if image.shape[-1] != image.shape[-2]:
            raise ValueError(f"adjacency image must be square, got {tuple(image.shape)}")
        x = self.features(image.float())
        v = spp(x, self.config.pyramid_levels)
        out = self.fc(v)
        return out if batched else out.squeeze(0)


def mse_loss(pred: torch.Tensor, target: torch.Tensor, normalize: str = "curve") -> torch.Tensor:
    """Squared-error loss over the full label vector (curve + robustness).

    normalize="curve" divides the sum of all steps+1 squared differences by
    the curve length L = dim - 1; "full" divides by dim instead.
    """
    if pred.shape != target.shape:
        raise ValueError(f"shape mismatch: {tuple(pred.shape)} vs {tuple(target.shape)}")
    if pred.dim() == 1:
        pred = pred.unsqueeze(0)
        target = target.unsqueeze(0)
    dim = pred.shape[1]
    if dim < 2:
        raise ValueError("label vectors need at least 2 elements (curve + robustness)")
    denom = dim - 1 if normalize == "curve" else dim
    return ((pred - target) ** 2).sum(dim=1).div(denom).mean()
