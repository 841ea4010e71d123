"""External cost backends, each runnable as `python -m qsim.backends.<name>`.

Protocol: one JSON document {"ddl": [...], "inserts": [...], "query": "..."}
on stdin, one JSON document {"cost": <positive float>} on stdout.  Nonzero
exit means failure; the caller treats anything else malformed as failure too.
"""
