def check(name):
    '''Mark a suite method as a named verification check.'''
    def wrapped(fn):
        fn.check_name = name
        return fn
    return wrapped
