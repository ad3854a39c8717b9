import pytest

import qhe


def test_gf2_invert_roundtrip():
    rng = qhe.Rng(3)
    m = qhe.gf2.random_invertible(5, rng)
    product = qhe.gf2.matmul(m, qhe.gf2.invert(m))
    assert product == [[int(i == j) for j in range(5)] for i in range(5)]
    with pytest.raises(qhe.SingularMatrixError):
        qhe.gf2.invert([[1, 1], [1, 1]])


def test_zq_helpers():
    assert qhe.zq.is_prime(359)
    assert not qhe.zq.is_prime(1)
    assert qhe.zq.generate_sophie_germain_prime(4, qhe.Rng(0)) == 11
    assert qhe.zq.centered_residue(4, 5) == -1


def test_chen_addition():
    rng = qhe.Rng(1)
    keys = qhe.chen.keygen(4, rng)
    assert keys.message_bits == 4 and keys.codeword_bits == 7
    c = qhe.chen.encrypt(300, keys)
    assert len(c) == 3
    assert qhe.chen.decrypt(c, keys) == 300
    assert qhe.chen.he_add(200, 100, keys, qhe.LoopbackService()) == 300


def test_gsw_addition():
    rng = qhe.Rng(2)
    keys = qhe.gsw.keygen(8, noise_density=0.0, rng=rng)
    assert keys.params.q == 179 or qhe.zq.is_prime(2 * keys.params.q + 1)
    c = qhe.gsw.add(qhe.gsw.encrypt(keys, 3, rng), qhe.gsw.encrypt(keys, 4, rng))
    assert qhe.gsw.decrypt(keys, c) == 7
    assert qhe.gsw.he_add(3, 4, keys, qhe.LoopbackService(), rng) == 7
    with pytest.raises(qhe.PreconditionError):
        qhe.gsw.he_add(9, 9, keys, qhe.LoopbackService(), rng)


def test_qotp_addition():
    rng = qhe.Rng(4)
    keys = qhe.qotp.keygen(3, rng)
    result = qhe.qotp.cloud_parity_add(qhe.qotp.encrypt(6, 3, keys))
    assert qhe.qotp.decrypt(result, keys, qhe.qotp.bit_carry(6, 3, 3)) == 9
    assert qhe.qotp.he_add(5, 3, qhe.LoopbackService(), rng) == 8


def test_handle_document():
    status, body = qhe.handle_document(
        '{"payload":{"x":[1,0,1],"x_phase":1,"y":[1,1,0],"y_phase":1},"scheme":"qotp"}'
    )
    assert status == 200
    assert body == '{"result":{"bits":[0,1,1],"phase":1},"scheme":"qotp"}'
    status, _ = qhe.handle_document("nope")
    assert status == 400
