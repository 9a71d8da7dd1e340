"""Keyed memoization with the single-computation-per-key contract:
at most one thread computes a given key, any others wait for it."""

import threading


class KeyedMemo:
    def __init__(self):
        self._data: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()

    def get(self, key, compute):
        with self._guard:
            if key in self._data:
                return self._data[key]
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            with self._guard:
                if key in self._data:
                    return self._data[key]
            value = compute()
            with self._guard:
                self._data[key] = value
                self._locks.pop(key, None)
            return value

    def clear(self):
        with self._guard:
            self._data.clear()
            self._locks.clear()
