"""
A simple shared-state logger for the oscillator laboratory.

Simple usage:
    import logger
    log = logger.Log('oscillab.log', logger.Log.DEBUG)
    log('A line in the log at the current level')           # simple
    log('A log line at WARN level', logger.Log.WARN)        # explicit level
    log.info('log line issued at INFO level')               # best

Every instance shares one state (the 'borg' recipe), so each module can
create its own handle at import time and they all write to the same file.
Only the first instance opens the file, later instances naming the same
file just reuse it.  A 'logfile' of None turns file output off.

Log lines carry the process id, since 'oscillab.py -j N' workers share
the file, and the module and line # of the log() call.
"""

import os
import datetime
import traceback


class Log:

    __shared_state = {}                # this __dict__ shared by ALL instances

    # the predefined logging levels
    CRITICAL = 50
    ERROR = 40
    WARN = 30
    INFO = 20
    DEBUG = 10
    NOTSET = 0

    # dict to convert logging level back to symbolic name
    _level_num_to_name = {
                          NOTSET: 'NOTSET',
                          DEBUG: 'DEBUG',
                          INFO: 'INFO',
                          WARN: 'WARN',
                          ERROR: 'ERROR',
                          CRITICAL: 'CRITICAL',
                         }

    # default maximum length of module name (enforced)
    DefaultMaxFname = 15

    def __init__(self, logfile=None, level=NOTSET, append=False,
                 max_fname=DefaultMaxFname):
        """Initialise the logging object.

        logfile  the path to the log file (None means no file output)
        level    logging level - don't log below this level
        append   True if log file is appended to
        """

        # make sure we have same state as all other log objects
        self.__dict__ = Log.__shared_state

        # already set up on this file?  keep the current level and handle
        if self.__dict__.get('logfile', False) == logfile:
            return

        self.max_fname = max_fname
        self.sym_level = 'NOTSET'
        self.level = self.check_level(level)
        self.logfd = None
        self.logfile = logfile

        if logfile is not None:
            self.logfd = open(logfile, 'a' if append else 'w')

        self.debug('=' * 55)
        self.debug('Log started on %s, log level=%s'
                   % (datetime.datetime.now().ctime(),
                      self._level_num_to_name.get(self.level, str(self.level))))
        self.debug('-' * 55)

        self.set_level(self.level)

    def check_level(self, level):
        """Check the level value for legality.

        level  a numeric logging level

        If 'level' is invalid, raise ValueError.  If valid, return value.
        """

        try:
            level = int(level)
        except (TypeError, ValueError):
            raise ValueError("Logging level invalid: '%s'" % str(level))

        if not self.NOTSET <= level <= self.CRITICAL:
            raise ValueError("Logging level invalid: '%s'" % str(level))

        return level

    def level_name(self, level):
        """Symbolic name for a numeric level, eg 'DEBUG+5'."""

        sym = self._level_num_to_name.get(level, None)
        if sym is None:
            # not recognized symbolic but it's legal, so interpret as 'XXXX+2'
            sym_10 = int(10 * (level // 10))
            sym = '%s+%d' % (self._level_num_to_name[sym_10], level - sym_10)
        return sym

    def set_level(self, level):
        """Set logging level."""

        level = self.check_level(level)
        self.level = level
        self.sym_level = self.level_name(level)

        self.critical('Logging level set to %02d (%s)' % (level, self.sym_level))

    def __call__(self, msg=None, level=None):
        """Call on the logging object.

        msg    message string to log
        level  level to log 'msg' at (if not given, assume self.level)
        """

        if self.logfd is None:
            return

        if level is None:
            level = self.level

        if level < self.level:
            return

        if msg is None:
            msg = ''

        to = datetime.datetime.now()

        # caller information - look back for first module != this module
        frames = traceback.extract_stack()
        frames.reverse()
        mod_name = __name__.rsplit('.', 1)[-1]
        fname = mod_name
        lnum = 0
        for (fpath, lnum, _, _) in frames:
            fname = os.path.basename(fpath).rsplit('.', 1)[0]
            if fname != mod_name:
                break

        fname = fname[:self.max_fname]
        self.logfd.write('%02d:%02d:%02d.%06d|%6d|%8s|%*s:%-4d|%s\n'
                         % (to.hour, to.minute, to.second, to.microsecond, os.getpid(),
                            self.level_name(level), self.max_fname,
                            fname, lnum, msg))
        self.logfd.flush()

    def critical(self, msg):
        """Log a message at CRITICAL level."""

        self(msg, self.CRITICAL)

    def error(self, msg):
        """Log a message at ERROR level."""

        self(msg, self.ERROR)

    def warn(self, msg):
        """Log a message at WARN level."""

        self(msg, self.WARN)

    def info(self, msg):
        """Log a message at INFO level."""

        self(msg, self.INFO)

    def debug(self, msg):
        """Log a message at DEBUG level."""

        self(msg, self.DEBUG)
