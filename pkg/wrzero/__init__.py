# wrzero package
