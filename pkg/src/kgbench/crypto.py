"""Authenticated encryption for task-data files.

Container layout: magic+version | scrypt salt (16) | AES-GCM nonce (12) |
ciphertext+tag. The key is derived from a passphrase with scrypt
(memory-hard); the magic header doubles as GCM associated data, so version
confusion fails authentication rather than producing garbage.
"""

from __future__ import annotations

import os

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM
from cryptography.hazmat.primitives.kdf.scrypt import Scrypt

MAGIC = b"LKGB3\x01"
_SALT_LEN = 16
_NONCE_LEN = 12
_SCRYPT_N = 2**14
_SCRYPT_R = 8
_SCRYPT_P = 1
_KEY_LEN = 32

TASKDATA_KEY_ENV = "LKGB_TASKDATA_KEY"


class TaskDataFormatError(ValueError):
    """The blob is not a task-data container (bad magic or truncated)."""


class TaskDataAuthError(ValueError):
    """Wrong passphrase or tampered ciphertext."""


def _derive_key(passphrase: str, salt: bytes) -> bytes:
    if not passphrase:
        raise ValueError("passphrase must be non-empty")
    kdf = Scrypt(salt=salt, length=_KEY_LEN, n=_SCRYPT_N, r=_SCRYPT_R, p=_SCRYPT_P)
    return kdf.derive(passphrase.encode("utf-8"))


def encrypt_task_data(plaintext: bytes, passphrase: str) -> bytes:
    salt = os.urandom(_SALT_LEN)
    nonce = os.urandom(_NONCE_LEN)
    key = _derive_key(passphrase, salt)
    ciphertext = AESGCM(key).encrypt(nonce, plaintext, MAGIC)
    return MAGIC + salt + nonce + ciphertext


def decrypt_task_data(blob: bytes, passphrase: str) -> bytes:
    header_len = len(MAGIC) + _SALT_LEN + _NONCE_LEN
    if len(blob) < header_len + 16:  # 16: GCM tag
        raise TaskDataFormatError("task-data container truncated")
    if blob[: len(MAGIC)] != MAGIC:
        raise TaskDataFormatError("not a task-data container (bad magic/version)")
    salt = blob[len(MAGIC) : len(MAGIC) + _SALT_LEN]
    nonce = blob[len(MAGIC) + _SALT_LEN : header_len]
    key = _derive_key(passphrase, salt)
    try:
        return AESGCM(key).decrypt(nonce, blob[header_len:], MAGIC)
    except InvalidTag as exc:
        raise TaskDataAuthError(
            "task-data authentication failed (wrong passphrase or tampered file)"
        ) from exc
