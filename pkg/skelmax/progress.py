import sys
import threading


class JobProgress(object):
    """Simple progress tracking for harness jobs"""

    def __init__(self, label, total, stream=None):
        self._label = label
        self._total = float(max(total, 1))
        self._done = 0
        self._lock = threading.Lock()
        self._stream = stream if stream is not None else sys.stderr
        self._enabled = getattr(self._stream, 'isatty', lambda: False)()

    def __call__(self, count=1):
        with self._lock:
            self._done += count
            if not self._enabled:
                return

            percentage = (self._done / self._total) * 100
            if percentage >= 100:
                # Clear the progress line
                self._stream.write("\r\033[K")
            else:
                self._stream.write("%s %d/%d (%.2f%%) \r" % (self._label, self._done, self._total, percentage))
            self._stream.flush()

    @property
    def done(self):
        return self._done
