"""
Run-length limited blocks, Gray indices and the noiseless torn-paper codec
"""
