import numpy as np
import pytest
import torch

from sppcnn import DESK_GROUPS, FULL_GROUPS, CurveNet, ModelConfig, mse_loss, spp


class TestSpp:
    @pytest.mark.parametrize("side", [1, 2, 5, 13, 32])
    def test_length_invariant_to_side(self, side):
        out = spp(torch.randn(6, side, side))
        assert out.shape == (6 * 30,)

    def test_rectangular_input(self):
        assert spp(torch.randn(512, 13, 9)).shape == (15360,)

    def test_one_by_one_replicates(self):
        x = torch.full((4, 1, 1), 3.5)
        out = spp(x)
        assert out.shape == (120,)
        assert (out == 3.5).all()

    def test_single_level_global_max(self):
        x = torch.tensor([[[1.0, 2.0], [3.0, 4.0]]])
        assert spp(x, levels=(1,)).tolist() == [4.0]

    def test_batched(self):
        out = spp(torch.randn(2, 3, 7, 7))
        assert out.shape == (2, 90)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            spp(torch.randn(3, 0, 4))

    def test_windows_cover_input(self):
        # the max over all bins at the finest level equals the global max
        x = torch.randn(1, 11, 11)
        out = spp(x, levels=(4,))
        assert out.max().item() == pytest.approx(x.max().item())


class TestForward:
    def test_output_dim_fixed_across_sizes(self):
        net = CurveNet(ModelConfig(output_dim=51, groups=DESK_GROUPS))
        for n in (1, 17, 64, 100):
            out = net(torch.zeros(n, n))
            assert out.shape == (51,)

    def test_batched_output(self):
        net = CurveNet(ModelConfig(output_dim=21, groups=DESK_GROUPS))
        out = net(torch.zeros(3, 1, 24, 24))
        assert out.shape == (3, 21)

    def test_non_square_rejected(self):
        net = CurveNet(ModelConfig(output_dim=11, groups=DESK_GROUPS))
        with pytest.raises(ValueError):
            net(torch.zeros(8, 9))

    def test_full_stack_spp_length(self):
        cfg = ModelConfig(output_dim=1001)
        assert cfg.groups == FULL_GROUPS
        assert cfg.last_channels == 512
        assert cfg.spp_bins == 30
        assert cfg.spp_length == 15360

    def test_feature_sides_follow_ceiling_halving(self):
        cfg = ModelConfig(output_dim=11, groups=DESK_GROUPS)
        net = CurveNet(cfg)
        sides = []
        for mod in net.features:
            if isinstance(mod, torch.nn.MaxPool2d):
                mod.register_forward_hook(lambda m, i, o: sides.append(o.shape[-1]))
        net(torch.zeros(100, 100))
        assert sides == [50, 25, 13, 7]


class TestLoss:
    def test_zero_on_equal(self):
        t = torch.rand(5, 11)
        assert mse_loss(t, t).item() == 0.0

    def test_curve_normalization(self):
        # sum over all 3 entries, divided by L=2
        pred = torch.tensor([1.0, 0.0, 0.5])
        target = torch.tensor([0.0, 0.0, 0.5])
        assert mse_loss(pred, target).item() == pytest.approx(0.5)

    def test_full_normalization_mode(self):
        pred = torch.tensor([1.0, 0.0, 0.5])
        target = torch.zeros(3)
        assert mse_loss(pred, target, normalize="full").item() == pytest.approx(1.25 / 3)

    def test_permutation_invariance(self):
        rng = np.random.default_rng(0)
        p = torch.from_numpy(rng.random(12))
        t = torch.from_numpy(rng.random(12))
        perm = torch.from_numpy(rng.permutation(12))
        assert mse_loss(p, t).item() == pytest.approx(mse_loss(p[perm], t[perm]).item())

    def test_nonnegative_and_zero_iff_equal(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            p = torch.from_numpy(rng.random(8))
            t = torch.from_numpy(rng.random(8))
            assert mse_loss(p, t).item() > 0

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            mse_loss(torch.zeros(3), torch.zeros(4))

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(2)
        pred = torch.tensor(rng.random(10), requires_grad=True, dtype=torch.float64)
        target = torch.tensor(rng.random(10), dtype=torch.float64)
        loss = mse_loss(pred, target)
        loss.backward()
        grad = pred.grad.clone()
        eps = 1e-6
        for i in range(10):
            shift = torch.zeros(10, dtype=torch.float64)
            shift[i] = eps
            hi = mse_loss(pred.detach() + shift, target).item()
            lo = mse_loss(pred.detach() - shift, target).item()
            fd = (hi - lo) / (2 * eps)
            assert abs(fd - grad[i].item()) <= 1e-4 * max(1.0, abs(fd))

    def test_single_step_descends(self):
        torch.manual_seed(3)
        net = CurveNet(ModelConfig(output_dim=6, groups=((3, 8, 1),)))
        x = torch.randint(0, 2, (1, 1, 12, 12)).float()
        y = torch.rand(1, 6)
        opt = torch.optim.SGD(net.parameters(), lr=1e-4)
        before = mse_loss(net(x), y)
        opt.zero_grad()
        before.backward()
        opt.step()
        after = mse_loss(net(x), y)
        assert after.item() < before.item()
